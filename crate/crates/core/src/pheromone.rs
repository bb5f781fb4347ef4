//! Pheromone storage and the three trail rules: initialization, the
//! per-move local update and the end-of-iteration global update.

use crate::error::{check_open_unit, check_positive, Error, Result};
use crate::instance::{floored_distance, validate_tour, Tour, TspInstance};

/// Which edges evaporate during a global update.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GlobalDecayScope {
    /// Every edge decays by `1 - alpha`; best-tour edges also receive the
    /// deposit.
    AllEdges,
    /// Only best-tour edges are touched (classic ACS).
    #[default]
    BestTourOnly,
}

impl std::str::FromStr for GlobalDecayScope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all-edges" | "all_edges" => Ok(GlobalDecayScope::AllEdges),
            "best-tour-only" | "best_tour_only" => Ok(GlobalDecayScope::BestTourOnly),
            other => Err(format!("unknown decay scope {other:?}")),
        }
    }
}

impl std::fmt::Display for GlobalDecayScope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GlobalDecayScope::AllEdges => "all-edges",
            GlobalDecayScope::BestTourOnly => "best-tour-only",
        })
    }
}

/// Dense symmetric pheromone matrix. The diagonal is unused and kept at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneField {
    n: usize,
    tau: Vec<f64>,
    tau0: f64,
    c_init: Option<f64>,
    zero_cost_edges: usize,
}

impl PheromoneField {
    /// Constant level `tau0` on every edge.
    pub fn init_uniform(n: usize, tau0: f64) -> Result<Self> {
        check_positive("tau0", tau0)?;
        let mut tau = vec![tau0; n * n];
        for r in 0..n {
            tau[r * n + r] = 0.0;
        }
        Ok(PheromoneField {
            n,
            tau,
            tau0,
            c_init: None,
            zero_cost_edges: 0,
        })
    }

    /// Inverse-cost initialization: `tau(r, s) = c / cost(r, s)`.
    ///
    /// Edges of zero cost are treated as cost 0.5 and counted in
    /// [`zero_cost_edges`](Self::zero_cost_edges). The local-update target
    /// `tau0` is still `1 / (n * L_nn)`.
    pub fn init_inverse_cost(inst: &TspInstance, c: f64) -> Result<Self> {
        check_positive("c_init", c)?;
        let n = inst.n();
        let mut tau = vec![0.0; n * n];
        let mut zero_cost_edges = 0;
        for r in 0..n {
            for s in (r + 1)..n {
                let d = inst.distance(r, s);
                if d == 0 {
                    zero_cost_edges += 1;
                }
                let level = c / floored_distance(d);
                tau[r * n + s] = level;
                tau[s * n + r] = level;
            }
        }
        Ok(PheromoneField {
            n,
            tau,
            tau0: inst.tau0(),
            c_init: Some(c),
            zero_cost_edges,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tau0(&self) -> f64 {
        self.tau0
    }

    pub fn c_init(&self) -> Option<f64> {
        self.c_init
    }

    /// Number of undirected zero-cost edges floored during initialization.
    pub fn zero_cost_edges(&self) -> usize {
        self.zero_cost_edges
    }

    #[inline]
    pub fn get(&self, r: usize, s: usize) -> f64 {
        self.tau[r * self.n + s]
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[f64] {
        &self.tau[r * self.n..(r + 1) * self.n]
    }

    /// Overwrites one edge (both directions).
    pub fn set(&mut self, r: usize, s: usize, value: f64) -> Result<()> {
        self.check_edge(r, s)?;
        check_positive("pheromone level", value)?;
        self.write(r, s, value);
        Ok(())
    }

    /// Order-sensitive fingerprint of every level, bit for bit.
    pub fn checksum(&self) -> u64 {
        // FNV-1a over the IEEE bit patterns.
        self.tau.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, v| {
            v.to_bits()
                .to_le_bytes()
                .iter()
                .fold(h, |h, &b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
        })
    }

    /// `tau(r, s) <- (1 - rho) * tau(r, s) + rho * tau0` on both directions.
    pub fn local_update(&mut self, r: usize, s: usize, rho: f64) -> Result<()> {
        check_open_unit("rho", rho)?;
        self.check_edge(r, s)?;
        self.apply_local(r, s, rho);
        Ok(())
    }

    #[inline]
    pub(crate) fn apply_local(&mut self, r: usize, s: usize, rho: f64) {
        let v = (1.0 - rho) * self.get(r, s) + rho * self.tau0;
        self.write(r, s, v);
    }

    /// Evaporates with factor `1 - alpha` and deposits `alpha / L_gb` on the
    /// edges of `best`. `scope` selects which edges evaporate.
    pub fn global_update(&mut self, best: &Tour, alpha: f64, scope: GlobalDecayScope) -> Result<()> {
        check_open_unit("alpha", alpha)?;
        validate_tour(best.order(), self.n).map_err(Error::InvalidTour)?;
        if best.length() == 0 {
            return Err(Error::Domain {
                what: "best tour length",
                value: 0.0,
                range: "(0, inf)",
            });
        }
        self.apply_global(best, alpha, scope);
        Ok(())
    }

    pub(crate) fn apply_global(&mut self, best: &Tour, alpha: f64, scope: GlobalDecayScope) {
        let keep = 1.0 - alpha;
        let deposit = alpha / best.length() as f64;
        match scope {
            GlobalDecayScope::AllEdges => {
                for v in self.tau.iter_mut().filter(|v| **v > 0.0) {
                    // Long runs would otherwise underflow unused edges to zero.
                    *v = (*v * keep).max(f64::MIN_POSITIVE);
                }
                for (r, s) in best.edges() {
                    let v = self.get(r, s) + deposit;
                    self.write(r, s, v);
                }
            }
            GlobalDecayScope::BestTourOnly => {
                for (r, s) in best.edges() {
                    let v = keep * self.get(r, s) + deposit;
                    self.write(r, s, v);
                }
            }
        }
    }

    #[inline]
    fn write(&mut self, r: usize, s: usize, v: f64) {
        self.tau[r * self.n + s] = v;
        self.tau[s * self.n + r] = v;
    }

    fn check_edge(&self, r: usize, s: usize) -> Result<()> {
        for c in [r, s] {
            if c >= self.n {
                return Err(Error::OutOfBounds { index: c, n: self.n });
            }
        }
        if r == s {
            return Err(Error::Domain {
                what: "edge endpoint",
                value: r as f64,
                range: "distinct endpoints",
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::DistanceMatrix;
    use proptest::prelude::*;

    fn line_instance(costs: &[Vec<u64>]) -> TspInstance {
        TspInstance::new("m", DistanceMatrix::from_rows(costs).unwrap()).unwrap()
    }

    #[test]
    fn uniform_fills_off_diagonal() {
        let field = PheromoneField::init_uniform(3, 0.5).unwrap();
        for r in 0..3 {
            for s in 0..3 {
                assert_eq!(field.get(r, s), if r == s { 0.0 } else { 0.5 });
            }
        }
        assert!(PheromoneField::init_uniform(3, 0.0).is_err());
        assert!(PheromoneField::init_uniform(3, -1.0).is_err());
    }

    #[test]
    fn inverse_cost_levels() {
        let inst = line_instance(&[vec![0, 4, 100], vec![4, 0, 10], vec![100, 10, 0]]);
        let field = PheromoneField::init_inverse_cost(&inst, 100.0).unwrap();
        assert_eq!(field.get(0, 1), 25.0);
        assert_eq!(field.get(0, 2), 1.0);
        assert_eq!(field.get(2, 1), 10.0);
        assert_eq!(field.zero_cost_edges(), 0);
        assert_eq!(field.c_init(), Some(100.0));
        assert!(PheromoneField::init_inverse_cost(&inst, 0.0).is_err());
    }

    #[test]
    fn inverse_cost_ratio_follows_cost_ratio() {
        let inst = line_instance(&[vec![0, 10, 20], vec![10, 0, 15], vec![20, 15, 0]]);
        let field = PheromoneField::init_inverse_cost(&inst, 7.0).unwrap();
        assert_eq!(field.get(0, 1) / field.get(0, 2), 2.0);
    }

    #[test]
    fn zero_cost_edges_are_floored() {
        let inst = line_instance(&[vec![0, 0, 3], vec![0, 0, 3], vec![3, 3, 0]]);
        let field = PheromoneField::init_inverse_cost(&inst, 100.0).unwrap();
        assert_eq!(field.get(0, 1), 200.0);
        assert_eq!(field.zero_cost_edges(), 1);
    }

    #[test]
    fn local_update_values() {
        let mut field = PheromoneField::init_uniform(3, 0.5).unwrap();
        field.set(0, 1, 1.0).unwrap();
        field.local_update(0, 1, 0.1).unwrap();
        assert!((field.get(0, 1) - 0.95).abs() < 1e-12);
        assert_eq!(field.get(1, 0), field.get(0, 1));

        // tau0 is a fixed point
        field.local_update(1, 2, 0.3).unwrap();
        assert_eq!(field.get(1, 2), 0.5);
    }

    #[test]
    fn local_update_converges_monotonically() {
        let mut field = PheromoneField::init_uniform(4, 0.5).unwrap();
        field.set(2, 3, 4.0).unwrap();
        let mut prev = field.get(2, 3);
        for _ in 0..200 {
            field.local_update(3, 2, 0.1).unwrap();
            let v = field.get(2, 3);
            assert!(v < prev && v >= 0.5);
            prev = v;
        }
        assert!((prev - 0.5).abs() < 1e-8);
    }

    #[test]
    fn local_update_domain_errors() {
        let mut field = PheromoneField::init_uniform(3, 0.5).unwrap();
        for rho in [0.0, 1.0, -0.2, 1.5] {
            assert!(field.local_update(0, 1, rho).is_err());
        }
        assert!(field.local_update(1, 1, 0.1).is_err());
        assert!(field.local_update(0, 3, 0.1).is_err());
    }

    #[test]
    fn global_update_on_and_off_tour() {
        // tour 0-1-2-3 has length 2 + 2 + 3 + 3 = 10
        let inst = line_instance(&[
            vec![0, 2, 9, 3],
            vec![2, 0, 2, 9],
            vec![9, 2, 0, 3],
            vec![3, 9, 3, 0],
        ]);
        let best = Tour::new(vec![0, 1, 2, 3], &inst).unwrap();
        assert_eq!(best.length(), 10);

        let mut field = PheromoneField::init_uniform(4, 1.0).unwrap();
        field.global_update(&best, 0.1, GlobalDecayScope::AllEdges).unwrap();
        assert!((field.get(0, 1) - 0.91).abs() < 1e-12);
        assert!((field.get(3, 0) - 0.91).abs() < 1e-12);
        assert!((field.get(0, 2) - 0.9).abs() < 1e-12);

        let mut classic = PheromoneField::init_uniform(4, 1.0).unwrap();
        classic.global_update(&best, 0.1, GlobalDecayScope::BestTourOnly).unwrap();
        assert!((classic.get(1, 2) - 0.91).abs() < 1e-12);
        assert_eq!(classic.get(1, 3), 1.0);

        // 1 / L_gb is a fixed point on tour edges
        let mut fixed = PheromoneField::init_uniform(4, 0.1).unwrap();
        fixed.global_update(&best, 0.3, GlobalDecayScope::AllEdges).unwrap();
        assert!((fixed.get(2, 3) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn global_update_rejects_bad_inputs() {
        let inst = line_instance(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        let best = Tour::new(vec![0, 1, 2], &inst).unwrap();
        let mut field = PheromoneField::init_uniform(3, 1.0).unwrap();
        assert!(field.global_update(&best, 1.0, GlobalDecayScope::AllEdges).is_err());
        let mut bigger = PheromoneField::init_uniform(4, 1.0).unwrap();
        assert!(matches!(
            bigger.global_update(&best, 0.1, GlobalDecayScope::AllEdges),
            Err(Error::InvalidTour(_))
        ));
    }

    #[test]
    fn long_evaporation_stays_positive() {
        let inst = line_instance(&[vec![0, 1, 1, 1], vec![1, 0, 1, 1], vec![1, 1, 0, 1], vec![1, 1, 1, 0]]);
        let best = Tour::new(vec![0, 1, 2, 3], &inst).unwrap();
        let mut field = PheromoneField::init_uniform(4, 1.0).unwrap();
        for _ in 0..20_000 {
            field.global_update(&best, 0.5, GlobalDecayScope::AllEdges).unwrap();
        }
        assert!(field.get(0, 2) > 0.0);
    }

    proptest! {
        #[test]
        fn updates_preserve_symmetry_and_positivity(
            ops in prop::collection::vec((0usize..5, 0usize..5, 0.01f64..0.99, any::<bool>()), 1..60),
            tau0 in 1e-6f64..10.0,
        ) {
            let inst = line_instance(&[
                vec![0, 3, 4, 5, 6],
                vec![3, 0, 7, 8, 9],
                vec![4, 7, 0, 2, 1],
                vec![5, 8, 2, 0, 4],
                vec![6, 9, 1, 4, 0],
            ]);
            let best = Tour::new(vec![0, 2, 4, 3, 1], &inst).unwrap();
            let mut field = PheromoneField::init_uniform(5, tau0).unwrap();
            for (r, s, rate, global) in ops {
                if global {
                    let before = field.clone();
                    field.global_update(&best, rate, GlobalDecayScope::AllEdges).unwrap();
                    let on_tour: Vec<_> = best.edges().collect();
                    for a in 0..5 {
                        for b in 0..5 {
                            if a == b { continue; }
                            let expected = if on_tour.contains(&(a, b)) || on_tour.contains(&(b, a)) {
                                (1.0 - rate) * before.get(a, b) + rate / best.length() as f64
                            } else {
                                ((1.0 - rate) * before.get(a, b)).max(f64::MIN_POSITIVE)
                            };
                            prop_assert!((field.get(a, b) - expected).abs() <= 1e-12 * expected.max(1.0));
                        }
                    }
                } else if r != s {
                    let old = field.get(r, s);
                    field.local_update(r, s, rate).unwrap();
                    let new = field.get(r, s);
                    let (lo, hi) = if old < tau0 { (old, tau0) } else { (tau0, old) };
                    prop_assert!(new >= lo * (1.0 - 1e-12) && new <= hi * (1.0 + 1e-12));
                }
                for a in 0..5 {
                    for b in 0..5 {
                        prop_assert_eq!(field.get(a, b), field.get(b, a));
                        if a != b {
                            prop_assert!(field.get(a, b) > 0.0);
                        }
                    }
                }
            }
        }
    }
}
