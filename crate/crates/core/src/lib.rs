//! Ant Colony System and Red-Black ACS for symmetric TSPLIB instances.
//!
//! ```
//! use rbacs_core::{bundled, run_rbacs, RbacsConfig};
//!
//! let inst = bundled::EIL51.instance().unwrap();
//! let config = RbacsConfig { budget: 20, ..RbacsConfig::default() };
//! let outcome = run_rbacs(&inst, &config, 7).unwrap();
//! assert_eq!(outcome.best.len(), 51);
//! ```

pub mod acs;
pub mod bench;
pub mod bundled;
pub mod error;
pub mod instance;
pub mod pheromone;
pub mod rbacs;
pub mod seed;
pub mod trace;
pub mod tsplib;

pub use acs::{
    choose_next_city, construct_tours, run_acs, transition_probabilities, AcsConfig, AntState, GroupParams,
    PheromoneInit, RunOutcome, Visibility,
};
pub use bench::{
    compare_table, render_report, run_trials, summarize, write_trial_traces, Algorithm, AlgorithmConfig, SummaryStats,
    TrialResult,
};
pub use error::{Error, Result};
pub use instance::{
    brute_force_optimum, nearest_neighbor_tour, tour_length, validate_tour, DistanceMatrix, Tour, TourDefect,
    TspInstance,
};
pub use pheromone::{GlobalDecayScope, PheromoneField};
pub use rbacs::{
    group_iteration, merge_results, run_rbacs, run_rbacs_with_seeds, ColonyGroup, Execution, GroupLabel,
    GroupSeeds, RbacsConfig,
};
pub use trace::{emit_trace_csv, parse_trace_csv, ConvergenceTrace, TraceRow};
pub use tsplib::{euc2d_distance, parse_tsplib, EdgeWeightType, InstanceHeader, NodeCoord};
