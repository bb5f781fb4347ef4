//! The three TSPLIB benchmark instances used by the acceptance suite, with
//! their published optimal tours.

use crate::error::Result;
use crate::instance::TspInstance;
use crate::tsplib;

#[derive(Debug, Clone, Copy)]
pub struct BundledInstance {
    pub name: &'static str,
    pub tsp: &'static str,
    pub opt_tour: &'static str,
    pub optimum: u64,
}

pub const EIL51: BundledInstance = BundledInstance {
    name: "eil51",
    tsp: include_str!("../data/eil51.tsp"),
    opt_tour: include_str!("../data/eil51.opt.tour"),
    optimum: 426,
};

pub const EIL76: BundledInstance = BundledInstance {
    name: "eil76",
    tsp: include_str!("../data/eil76.tsp"),
    opt_tour: include_str!("../data/eil76.opt.tour"),
    optimum: 538,
};

pub const KROA100: BundledInstance = BundledInstance {
    name: "kroA100",
    tsp: include_str!("../data/kroA100.tsp"),
    opt_tour: include_str!("../data/kroA100.opt.tour"),
    optimum: 21282,
};

pub const ALL: [BundledInstance; 3] = [EIL51, EIL76, KROA100];

impl BundledInstance {
    pub fn instance(&self) -> Result<TspInstance> {
        TspInstance::from_tsplib(self.tsp).map(|(_, inst)| inst)
    }

    /// Published optimal tour as 0-based city indices.
    pub fn optimal_order(&self) -> Result<Vec<usize>> {
        tsplib::parse_tour(self.opt_tour)
    }

    pub fn by_name(name: &str) -> Option<BundledInstance> {
        ALL.into_iter().find(|b| b.name.eq_ignore_ascii_case(name))
    }
}
