//! Instances, tours and the two deterministic constructions used as
//! baselines and oracles: the nearest-neighbor tour and exhaustive search.

use std::fmt;

use crate::error::{Error, Result};
use crate::tsplib::{self, euc2d_distance, InstanceHeader, NodeCoord};

/// Exhaustive search refuses instances larger than this.
pub const BRUTE_FORCE_LIMIT: usize = 11;

/// Stand-in distance for coincident cities when a reciprocal is needed.
pub const ZERO_DISTANCE_FLOOR: f64 = 0.5;

/// Dense symmetric integer distance matrix with a zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<u64>,
}

impl DistanceMatrix {
    pub fn from_coords(coords: &[NodeCoord]) -> Self {
        let n = coords.len();
        let mut entries = vec![0; n * n];
        for r in 0..n {
            for s in (r + 1)..n {
                let d = euc2d_distance(&coords[r], &coords[s]);
                entries[r * n + s] = d;
                entries[s * n + r] = d;
            }
        }
        DistanceMatrix { n, entries }
    }

    /// Builds a matrix from rows, checking shape, symmetry and the diagonal.
    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Structure(format!(
                    "row {r} has {} entries, expected {n}",
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        for r in 0..n {
            if entries[r * n + r] != 0 {
                return Err(Error::Structure(format!("diagonal entry {r} is nonzero")));
            }
            for s in (r + 1)..n {
                if entries[r * n + s] != entries[s * n + r] {
                    return Err(Error::Structure(format!("entries ({r},{s}) and ({s},{r}) differ")));
                }
            }
        }
        Ok(DistanceMatrix { n, entries })
    }

    #[inline]
    pub fn get(&self, r: usize, s: usize) -> u64 {
        self.entries[r * self.n + s]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.n..(r + 1) * self.n]
    }
}

#[derive(Debug, Clone)]
pub struct TspInstance {
    name: String,
    dist: DistanceMatrix,
}

impl TspInstance {
    pub fn new(name: impl Into<String>, dist: DistanceMatrix) -> Result<Self> {
        if dist.n() < 3 {
            return Err(Error::Structure(format!(
                "an instance needs at least 3 cities, got {}",
                dist.n()
            )));
        }
        Ok(TspInstance {
            name: name.into(),
            dist,
        })
    }

    pub fn from_coords(name: impl Into<String>, coords: &[NodeCoord]) -> Result<Self> {
        Self::new(name, DistanceMatrix::from_coords(coords))
    }

    /// Parses TSPLIB text into a header and an instance.
    pub fn from_tsplib(text: &str) -> Result<(InstanceHeader, Self)> {
        let (header, coords) = tsplib::parse_tsplib(text)?;
        let inst = Self::from_coords(header.name.clone(), &coords)?;
        Ok((header, inst))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.dist.n()
    }

    pub fn dist(&self) -> &DistanceMatrix {
        &self.dist
    }

    #[inline]
    pub fn distance(&self, r: usize, s: usize) -> u64 {
        self.dist.get(r, s)
    }

    /// Visibility `1 / d(r, s)`. Coincident distinct cities use the
    /// [`ZERO_DISTANCE_FLOOR`] so the value stays finite.
    #[inline]
    pub fn visibility(&self, r: usize, s: usize) -> f64 {
        1.0 / floored_distance(self.distance(r, s))
    }

    /// Base pheromone level `1 / (n * L_nn)` with `L_nn` the
    /// nearest-neighbor tour length from city 0.
    pub fn tau0(&self) -> f64 {
        let nn = nearest_neighbor_tour(self, 0).expect("city 0 always exists");
        1.0 / (self.n() as f64 * nn.length().max(1) as f64)
    }
}

#[inline]
pub(crate) fn floored_distance(d: u64) -> f64 {
    if d == 0 {
        ZERO_DISTANCE_FLOOR
    } else {
        d as f64
    }
}

/// What is wrong with a candidate tour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TourDefect {
    pub expected_len: usize,
    pub actual_len: usize,
    pub duplicated: Vec<usize>,
    pub missing: Vec<usize>,
    pub out_of_range: Vec<usize>,
}

impl fmt::Display for TourDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.actual_len != self.expected_len {
            parts.push(format!(
                "wrong cardinality ({} cities, expected {})",
                self.actual_len, self.expected_len
            ));
        }
        if !self.duplicated.is_empty() {
            parts.push(format!("duplicated cities {:?}", self.duplicated));
        }
        if !self.missing.is_empty() {
            parts.push(format!("missing cities {:?}", self.missing));
        }
        if !self.out_of_range.is_empty() {
            parts.push(format!("out-of-range cities {:?}", self.out_of_range));
        }
        f.write_str(&parts.join("; "))
    }
}

impl std::error::Error for TourDefect {}

/// Checks that `order` is a permutation of `0..n`.
pub fn validate_tour(order: &[usize], n: usize) -> Result<(), TourDefect> {
    let mut seen = vec![0u32; n];
    let mut out_of_range = Vec::new();
    for &c in order {
        match seen.get_mut(c) {
            Some(count) => *count += 1,
            None => out_of_range.push(c),
        }
    }
    let duplicated: Vec<usize> = (0..n).filter(|&c| seen[c] > 1).collect();
    let missing: Vec<usize> = (0..n).filter(|&c| seen[c] == 0).collect();
    if order.len() == n && duplicated.is_empty() && missing.is_empty() && out_of_range.is_empty() {
        Ok(())
    } else {
        Err(TourDefect {
            expected_len: n,
            actual_len: order.len(),
            duplicated,
            missing,
            out_of_range,
        })
    }
}

/// Closed-cycle length of `order`, validated first.
pub fn tour_length(order: &[usize], inst: &TspInstance) -> Result<u64> {
    validate_tour(order, inst.n()).map_err(Error::InvalidTour)?;
    Ok(cycle_length(order, inst))
}

/// Closed-cycle length without validation.
pub(crate) fn cycle_length(order: &[usize], inst: &TspInstance) -> u64 {
    let Some(&last) = order.last() else {
        return 0;
    };
    let mut prev = last;
    let mut total = 0;
    for &c in order {
        total += inst.distance(prev, c);
        prev = c;
    }
    total
}

/// A validated permutation of the cities with its cycle length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tour {
    order: Vec<usize>,
    length: u64,
}

impl Tour {
    pub fn new(order: Vec<usize>, inst: &TspInstance) -> Result<Self> {
        let length = tour_length(&order, inst)?;
        Ok(Tour { order, length })
    }

    /// Caller guarantees `order` is a permutation and `length` its cycle length.
    pub(crate) fn from_parts(order: Vec<usize>, length: u64) -> Self {
        Tour { order, length }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Undirected edges of the closed cycle, including the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.order.len();
        (0..n).map(move |i| (self.order[i], self.order[(i + 1) % n]))
    }

    pub fn into_order(self) -> Vec<usize> {
        self.order
    }
}

/// Greedy tour from `start`: always move to the nearest unvisited city,
/// lowest index on ties.
pub fn nearest_neighbor_tour(inst: &TspInstance, start: usize) -> Result<Tour> {
    let n = inst.n();
    if start >= n {
        return Err(Error::OutOfBounds { index: start, n });
    }
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    visited[start] = true;
    order.push(start);
    let mut current = start;
    let mut length = 0;
    for _ in 1..n {
        let row = inst.dist().row(current);
        let (next, d) = (0..n)
            .filter(|&c| !visited[c])
            .map(|c| (c, row[c]))
            .min_by_key(|&(c, d)| (d, c))
            .expect("an unvisited city remains");
        visited[next] = true;
        order.push(next);
        length += d;
        current = next;
    }
    length += inst.distance(current, start);
    Ok(Tour::from_parts(order, length))
}

/// Globally shortest tour by enumerating every permutation that starts at
/// city 0. Partial tours already at least as long as the incumbent are cut,
/// which keeps the result exact.
pub fn brute_force_optimum(inst: &TspInstance) -> Result<Tour> {
    let n = inst.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }

    struct Search<'a> {
        inst: &'a TspInstance,
        path: Vec<usize>,
        used: Vec<bool>,
        best: Option<(u64, Vec<usize>)>,
    }

    impl Search<'_> {
        fn extend(&mut self, partial: u64) {
            let n = self.inst.n();
            if let Some((best, _)) = &self.best {
                if partial >= *best {
                    return;
                }
            }
            let last = *self.path.last().unwrap();
            if self.path.len() == n {
                let total = partial + self.inst.distance(last, self.path[0]);
                if self.best.as_ref().is_none_or(|(b, _)| total < *b) {
                    self.best = Some((total, self.path.clone()));
                }
                return;
            }
            for c in 1..n {
                if !self.used[c] {
                    self.used[c] = true;
                    self.path.push(c);
                    self.extend(partial + self.inst.distance(last, c));
                    self.path.pop();
                    self.used[c] = false;
                }
            }
        }
    }

    let mut search = Search {
        inst,
        path: vec![0],
        used: vec![false; n],
        best: None,
    };
    search.used[0] = true;
    search.extend(0);
    let (length, order) = search.best.expect("n >= 3 yields at least one tour");
    Ok(Tour::from_parts(order, length))
}
