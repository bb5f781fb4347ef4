//! Red-Black ACS: two ant groups searching side by side.
//!
//! Each group owns its own pheromone field, starts from inverse-cost
//! pheromone levels, uses its own parameters and performs its own global
//! update with its own best tour. The groups never read or write each
//! other's trails; their answers meet only when the run ends.

use std::fmt;

use rand::Rng;

use crate::acs::{construct_tours, random_starts, GroupParams, RunOutcome, Visibility};
use crate::error::{check_positive, Error, Result};
use crate::instance::{Tour, TspInstance};
use crate::pheromone::{GlobalDecayScope, PheromoneField};
use crate::seed::{derive_seed, rng_from_seed, EngineRng};
use crate::trace::{ConvergenceTrace, TraceRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupLabel {
    Black,
    Red,
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupLabel::Black => "black",
            GroupLabel::Red => "red",
        })
    }
}

/// One ant group with exclusively owned trails.
#[derive(Debug, Clone)]
pub struct ColonyGroup {
    label: GroupLabel,
    params: GroupParams,
    field: PheromoneField,
    visibility: Visibility,
    group_best: Option<Tour>,
}

impl ColonyGroup {
    pub fn new(label: GroupLabel, params: GroupParams, field: PheromoneField, inst: &TspInstance) -> Result<Self> {
        params.validate()?;
        if field.n() != inst.n() {
            return Err(Error::Structure(format!(
                "pheromone field covers {} cities, instance has {}",
                field.n(),
                inst.n()
            )));
        }
        Ok(ColonyGroup {
            label,
            params,
            field,
            visibility: Visibility::new(inst, params.beta),
            group_best: None,
        })
    }

    /// Group whose field starts at `c / cost(r, s)`.
    pub fn with_inverse_cost(label: GroupLabel, params: GroupParams, inst: &TspInstance, c: f64) -> Result<Self> {
        Self::new(label, params, PheromoneField::init_inverse_cost(inst, c)?, inst)
    }

    pub fn label(&self) -> GroupLabel {
        self.label
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn field(&self) -> &PheromoneField {
        &self.field
    }

    pub fn group_best(&self) -> Option<&Tour> {
        self.group_best.as_ref()
    }

    /// Keeps `candidate` if it is strictly shorter than the group best, then
    /// applies the global update with the group best. Returns whether the
    /// group best improved.
    pub fn absorb(&mut self, candidate: Tour, scope: GlobalDecayScope) -> Result<bool> {
        let improved = self
            .group_best
            .as_ref()
            .is_none_or(|b| candidate.length() < b.length());
        if improved {
            self.group_best = Some(candidate);
        }
        let best = self.group_best.as_ref().expect("just set");
        self.field.global_update(best, self.params.alpha, scope)?;
        Ok(improved)
    }
}

/// Places the group's ants at random cities, builds one tour per ant on the
/// group's own field and returns the shortest (first on ties).
pub fn group_iteration<R: Rng + ?Sized>(group: &mut ColonyGroup, inst: &TspInstance, rng: &mut R) -> Result<Tour> {
    let starts = random_starts(inst.n(), group.params.ants, rng);
    group_iteration_from(group, inst, &starts, rng)
}

/// Like [`group_iteration`] with caller-chosen start cities.
pub fn group_iteration_from<R: Rng + ?Sized>(
    group: &mut ColonyGroup,
    inst: &TspInstance,
    starts: &[usize],
    rng: &mut R,
) -> Result<Tour> {
    let tours = construct_tours(&mut group.field, inst, &group.visibility, &group.params, starts, rng)?;
    tours
        .into_iter()
        .min_by_key(Tour::length)
        .ok_or(Error::Empty("no ants to build tours"))
}

/// The shorter of the two group bests; ties go to black.
pub fn merge_results<'a>(black_best: &'a Tour, red_best: &'a Tour) -> &'a Tour {
    if red_best.length() < black_best.length() {
        red_best
    } else {
        black_best
    }
}

/// Whether the two groups of an iteration run on separate threads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Concurrent,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RbacsConfig {
    pub black: GroupParams,
    pub red: GroupParams,
    /// Constant of the inverse-cost initialization.
    pub c_init: f64,
    pub budget: usize,
    /// Consecutive iterations without a better global best before stopping;
    /// 0 disables.
    pub stagnation_limit: usize,
    pub decay_scope: GlobalDecayScope,
    pub execution: Execution,
}

impl Default for RbacsConfig {
    fn default() -> Self {
        RbacsConfig {
            black: GroupParams::default(),
            red: GroupParams::red_default(),
            c_init: 100.0,
            budget: 2000,
            stagnation_limit: 0,
            decay_scope: GlobalDecayScope::BestTourOnly,
            execution: Execution::Concurrent,
        }
    }
}

impl RbacsConfig {
    pub fn validate(&self) -> Result<()> {
        self.black.validate()?;
        self.red.validate()?;
        check_positive("c_init", self.c_init)?;
        if self.budget == 0 {
            return Err(Error::Domain {
                what: "budget",
                value: 0.0,
                range: "[1, inf)",
            });
        }
        Ok(())
    }
}

/// Seeds of the two groups' random streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupSeeds {
    pub black: u64,
    pub red: u64,
}

impl GroupSeeds {
    pub fn derive(seed: u64) -> Self {
        GroupSeeds {
            black: derive_seed(seed, 0),
            red: derive_seed(seed, 1),
        }
    }
}

/// Runs Red-Black ACS with group streams derived from `seed`.
pub fn run_rbacs(inst: &TspInstance, config: &RbacsConfig, seed: u64) -> Result<RunOutcome> {
    run_rbacs_with_seeds(inst, config, GroupSeeds::derive(seed))
}

pub fn run_rbacs_with_seeds(inst: &TspInstance, config: &RbacsConfig, seeds: GroupSeeds) -> Result<RunOutcome> {
    config.validate()?;
    let mut black = ColonyGroup::with_inverse_cost(GroupLabel::Black, config.black, inst, config.c_init)?;
    let mut red = ColonyGroup::with_inverse_cost(GroupLabel::Red, config.red, inst, config.c_init)?;
    let mut black_rng = rng_from_seed(seeds.black);
    let mut red_rng = rng_from_seed(seeds.red);

    let step = |group: &mut ColonyGroup, rng: &mut EngineRng| -> Result<()> {
        let best = group_iteration(group, inst, rng)?;
        group.absorb(best, config.decay_scope)?;
        Ok(())
    };

    let mut trace = ConvergenceTrace::default();
    let mut global_best = u64::MAX;
    let mut stale = 0;
    let mut stopped_early = false;

    for iteration in 1..=config.budget {
        match config.execution {
            Execution::Serial => {
                step(&mut black, &mut black_rng)?;
                step(&mut red, &mut red_rng)?;
            }
            Execution::Concurrent => {
                let (b, r) = rayon::join(
                    || step(&mut black, &mut black_rng),
                    || step(&mut red, &mut red_rng),
                );
                b?;
                r?;
            }
        }

        let black_best = black.group_best().expect("set after an iteration");
        let red_best = red.group_best().expect("set after an iteration");
        let best = merge_results(black_best, red_best).length();
        if best < global_best {
            global_best = best;
            stale = 0;
        } else {
            stale += 1;
        }
        trace.push(TraceRow {
            iteration,
            black_best: black_best.length(),
            red_best: Some(red_best.length()),
            global_best,
        });

        if config.stagnation_limit > 0 && stale >= config.stagnation_limit {
            stopped_early = iteration < config.budget;
            break;
        }
    }

    let best = merge_results(
        black.group_best().expect("budget >= 1"),
        red.group_best().expect("budget >= 1"),
    )
    .clone();
    let iterations_run = trace.len();
    Ok(RunOutcome {
        best,
        trace,
        iterations_run,
        stopped_early,
    })
}
