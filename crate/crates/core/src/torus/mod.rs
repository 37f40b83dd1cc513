//! Simple and one-double-point geodesics on a cusped once-punctured torus.

mod census;
mod selfint;
mod triple;

pub use census::{
    count_census, enumerate_simple, growth_exponent, mc2_sum, mcshane_length_term, mcshane_sum,
    mcshane_trace_term, one_intersection_census, one_minus_sqrt, CensusCounts, CensusMode, Family,
    GeodesicRecord, McShaneForm, PartialSum,
};
pub use selfint::{self_intersection, self_intersection_ball, self_intersection_with_margin, SelfIntersection, SEARCH_MARGIN};
pub use triple::{Slope, TraceTriple};
