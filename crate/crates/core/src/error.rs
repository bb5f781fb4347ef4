use std::io;

use thiserror::Error;

use crate::instance::TourDefect;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("structural error: {0}")]
    Structure(String),

    #[error("unsupported format: {0}")]
    Unsupported(String),

    #[error("invalid tour: {0}")]
    InvalidTour(TourDefect),

    #[error("{what} = {value} is outside {range}")]
    Domain {
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("city index {index} out of range for {n} cities")]
    OutOfBounds { index: usize, n: usize },

    #[error("exhaustive search limited to {limit} cities, instance has {n}")]
    TooLarge { n: usize, limit: usize },

    #[error("ant has no unvisited city left")]
    NoCandidates,

    #[error("{0}")]
    Empty(&'static str),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_open_unit(what: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what,
            value,
            range: "(0, 1)",
        })
    }
}

pub(crate) fn check_positive(what: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what,
            value,
            range: "(0, inf)",
        })
    }
}
