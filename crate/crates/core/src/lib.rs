//! Exact computation with approximation types over truncated Hahn series.

pub mod apprtype;
pub mod corpus;
pub mod curated;
pub mod envelope;
pub mod error;
pub mod hahn;
pub mod ops;
pub mod ordval;
pub mod reldeg;
pub mod tamegal;
pub mod text;
pub mod typefile;
pub mod valpoly;

pub use apprtype::{ApproxType, Settings};
pub use error::{Error, Result};
pub use hahn::{ResidueElem, Series, SubfieldPredicate, Truncation};
pub use ordval::{compare_value_cut, scale_cut, shift_cut, Cut, CutSide, GroupValue, Q};
pub use text::{parse_poly, parse_series};
pub use valpoly::ValPoly;
