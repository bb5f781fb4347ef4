//! Single-colony Ant Colony System.
//!
//! Ants move step-synchronously: at every step each ant picks its next city
//! with the pseudo-random-proportional rule and immediately applies the
//! local update to the edge it walked. After the last step every ant walks
//! the closing edge home, which is locally updated as well.

use rand::Rng;

use crate::error::{check_open_unit, check_positive, Error, Result};
use crate::instance::{cycle_length, Tour, TspInstance};
use crate::pheromone::{GlobalDecayScope, PheromoneField};
use crate::trace::{ConvergenceTrace, TraceRow};

/// Parameters of one ant group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupParams {
    /// Probability of exploiting (argmax) instead of sampling.
    pub q0: f64,
    /// Exponent on visibility.
    pub beta: f64,
    /// Local decay.
    pub rho: f64,
    /// Global decay.
    pub alpha: f64,
    /// Ants per iteration.
    pub ants: usize,
}

impl Default for GroupParams {
    fn default() -> Self {
        GroupParams {
            q0: 0.9,
            beta: 2.0,
            rho: 0.1,
            alpha: 0.1,
            ants: 20,
        }
    }
}

impl GroupParams {
    /// Defaults for the red group of a two-group run: faster local and
    /// global evaporation than the black group.
    pub fn red_default() -> Self {
        GroupParams {
            rho: 0.2,
            alpha: 0.15,
            ..GroupParams::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.q0) {
            return Err(Error::Domain {
                what: "q0",
                value: self.q0,
                range: "[0, 1]",
            });
        }
        check_positive("beta", self.beta)?;
        check_open_unit("rho", self.rho)?;
        check_open_unit("alpha", self.alpha)?;
        if self.ants == 0 {
            return Err(Error::Domain {
                what: "ants",
                value: 0.0,
                range: "[1, inf)",
            });
        }
        Ok(())
    }
}

/// Visibility raised to `beta`, precomputed for every edge.
#[derive(Debug, Clone)]
pub struct Visibility {
    n: usize,
    beta: f64,
    eta_beta: Vec<f64>,
}

impl Visibility {
    pub fn new(inst: &TspInstance, beta: f64) -> Self {
        let n = inst.n();
        let mut eta_beta = vec![0.0; n * n];
        for r in 0..n {
            for s in 0..n {
                if r != s {
                    eta_beta[r * n + s] = inst.visibility(r, s).powf(beta);
                }
            }
        }
        Visibility { n, beta, eta_beta }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[f64] {
        &self.eta_beta[r * self.n..(r + 1) * self.n]
    }
}

/// A partially built tour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntState {
    current: usize,
    visited: Vec<bool>,
    tour: Vec<usize>,
}

impl AntState {
    pub fn new(start: usize, n: usize) -> Result<Self> {
        if start >= n {
            return Err(Error::OutOfBounds { index: start, n });
        }
        let mut visited = vec![false; n];
        visited[start] = true;
        let mut tour = Vec::with_capacity(n);
        tour.push(start);
        Ok(AntState {
            current: start,
            visited,
            tour,
        })
    }

    pub fn current(&self) -> usize {
        self.current
    }

    pub fn start(&self) -> usize {
        self.tour[0]
    }

    pub fn tour(&self) -> &[usize] {
        &self.tour
    }

    pub fn is_visited(&self, city: usize) -> bool {
        self.visited[city]
    }

    pub fn is_complete(&self) -> bool {
        self.tour.len() == self.visited.len()
    }

    /// Cities not yet visited, ascending.
    pub fn unvisited(&self) -> impl Iterator<Item = usize> + '_ {
        self.visited
            .iter()
            .enumerate()
            .filter(|(_, &v)| !v)
            .map(|(c, _)| c)
    }

    pub fn visit(&mut self, city: usize) -> Result<()> {
        match self.visited.get(city) {
            None => Err(Error::OutOfBounds {
                index: city,
                n: self.visited.len(),
            }),
            Some(true) => Err(Error::Domain {
                what: "already visited city",
                value: city as f64,
                range: "unvisited cities",
            }),
            Some(false) => {
                self.visited[city] = true;
                self.tour.push(city);
                self.current = city;
                Ok(())
            }
        }
    }
}

/// Next-city probabilities of the biased-exploration branch, over the
/// unvisited cities in ascending order.
pub fn transition_probabilities(
    ant: &AntState,
    field: &PheromoneField,
    visibility: &Visibility,
) -> Vec<(usize, f64)> {
    let tau = field.row(ant.current);
    let eta = visibility.row(ant.current);
    let weights: Vec<(usize, f64)> = ant.unvisited().map(|u| (u, tau[u] * eta[u])).collect();
    let total: f64 = weights.iter().map(|(_, w)| w).sum();
    weights.into_iter().map(|(u, w)| (u, w / total)).collect()
}

/// Pseudo-random-proportional choice of the next city.
///
/// With probability `q0` the unvisited city maximizing `tau * eta^beta` is
/// taken (lowest index on ties); otherwise one is sampled in proportion to
/// the same weights.
pub fn choose_next_city<R: Rng + ?Sized>(
    ant: &AntState,
    field: &PheromoneField,
    visibility: &Visibility,
    q0: f64,
    rng: &mut R,
) -> Result<usize> {
    let mut candidates = ant.unvisited();
    let first = candidates.next().ok_or(Error::NoCandidates)?;
    let only = candidates.next().is_none();
    if only {
        return Ok(first);
    }

    let tau = field.row(ant.current);
    let eta = visibility.row(ant.current);
    let q: f64 = rng.gen();
    if q <= q0 {
        return Ok(argmax(ant, tau, eta));
    }

    let total: f64 = ant.unvisited().map(|u| tau[u] * eta[u]).sum();
    if !(total > 0.0 && total.is_finite()) {
        return Ok(argmax(ant, tau, eta));
    }
    let target = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    let mut last = first;
    for u in ant.unvisited() {
        acc += tau[u] * eta[u];
        if acc > target {
            return Ok(u);
        }
        last = u;
    }
    // Rounding left the target past the final cumulative sum.
    Ok(last)
}

fn argmax(ant: &AntState, tau: &[f64], eta: &[f64]) -> usize {
    let mut best = usize::MAX;
    let mut best_w = f64::NEG_INFINITY;
    for u in ant.unvisited() {
        let w = tau[u] * eta[u];
        if w > best_w {
            best_w = w;
            best = u;
        }
    }
    best
}

/// Builds one tour per entry of `starts`, locally updating `field` after
/// every move including each closing edge.
pub fn construct_tours<R: Rng + ?Sized>(
    field: &mut PheromoneField,
    inst: &TspInstance,
    visibility: &Visibility,
    params: &GroupParams,
    starts: &[usize],
    rng: &mut R,
) -> Result<Vec<Tour>> {
    let n = inst.n();
    let mut ants = starts
        .iter()
        .map(|&s| AntState::new(s, n))
        .collect::<Result<Vec<_>>>()?;

    for _ in 1..n {
        for ant in &mut ants {
            let from = ant.current;
            let next = choose_next_city(ant, field, visibility, params.q0, rng)?;
            ant.visit(next)?;
            field.apply_local(from, next, params.rho);
        }
    }
    for ant in &ants {
        field.apply_local(ant.current, ant.start(), params.rho);
    }

    Ok(ants
        .into_iter()
        .map(|ant| {
            let length = cycle_length(&ant.tour, inst);
            Tour::from_parts(ant.tour, length)
        })
        .collect())
}

/// Uniform random start city for each of `ants` ants, with replacement.
pub fn random_starts<R: Rng + ?Sized>(n: usize, ants: usize, rng: &mut R) -> Vec<usize> {
    (0..ants).map(|_| rng.gen_range(0..n)).collect()
}

/// How a colony's pheromone field starts out.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum PheromoneInit {
    /// Every edge at `1 / (n * L_nn)`.
    #[default]
    Uniform,
    /// Every edge at `c / cost(r, s)`.
    InverseCost { c: f64 },
}

impl PheromoneInit {
    pub fn build(&self, inst: &TspInstance) -> Result<PheromoneField> {
        match *self {
            PheromoneInit::Uniform => PheromoneField::init_uniform(inst.n(), inst.tau0()),
            PheromoneInit::InverseCost { c } => PheromoneField::init_inverse_cost(inst, c),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcsConfig {
    pub params: GroupParams,
    pub init: PheromoneInit,
    /// Hard cap on iterations.
    pub budget: usize,
    /// Consecutive non-improving iterations before stopping; 0 disables.
    pub stagnation_limit: usize,
    pub decay_scope: GlobalDecayScope,
}

impl Default for AcsConfig {
    fn default() -> Self {
        AcsConfig {
            params: GroupParams::default(),
            init: PheromoneInit::Uniform,
            budget: 2000,
            stagnation_limit: 0,
            decay_scope: GlobalDecayScope::BestTourOnly,
        }
    }
}

impl AcsConfig {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if let PheromoneInit::InverseCost { c } = self.init {
            check_positive("c_init", c)?;
        }
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

/// Result of one engine run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub best: Tour,
    pub trace: ConvergenceTrace,
    pub iterations_run: usize,
    /// True when the stagnation limit ended the run before the budget.
    pub stopped_early: bool,
}

/// Runs single-colony ACS. Only the global-best tour deposits pheromone.
pub fn run_acs<R: Rng + ?Sized>(inst: &TspInstance, config: &AcsConfig, rng: &mut R) -> Result<RunOutcome> {
    config.validate()?;
    let params = &config.params;
    let mut field = config.init.build(inst)?;
    let visibility = Visibility::new(inst, params.beta);
    let mut best: Option<Tour> = None;
    let mut trace = ConvergenceTrace::default();
    let mut stale = 0;
    let mut stopped_early = false;

    for iteration in 1..=config.budget {
        let starts = random_starts(inst.n(), params.ants, rng);
        let tours = construct_tours(&mut field, inst, &visibility, params, &starts, rng)?;
        let iteration_best = tours
            .into_iter()
            .min_by_key(Tour::length)
            .expect("at least one ant");

        let improved = best
            .as_ref()
            .is_none_or(|b| iteration_best.length() < b.length());
        if improved {
            best = Some(iteration_best);
            stale = 0;
        } else {
            stale += 1;
        }
        let global = best.as_ref().expect("set on first iteration");
        field.global_update(global, params.alpha, config.decay_scope)?;
        trace.push(TraceRow {
            iteration,
            black_best: global.length(),
            red_best: None,
            global_best: global.length(),
        });

        if config.stagnation_limit > 0 && stale >= config.stagnation_limit {
            stopped_early = iteration < config.budget;
            break;
        }
    }

    let iterations_run = trace.len();
    Ok(RunOutcome {
        best: best.expect("budget >= 1"),
        trace,
        iterations_run,
        stopped_early,
    })
}
