//! Bounds, the region classifier and binomial-tail tools.

pub mod binomial;
pub mod bounds;
pub mod region;

pub use binomial::{best_average, candidate_ks, chaundy_bullard_check, pepys_table, BestAverage, PepysTable};
pub use bounds::{
    bold_lower_hyp, bound_curve, feige_upper, feige_upper_exact, pz_upper, write_bounds_csv, HypotenuseBounds,
};
pub use region::{classify, in_rectangles, region_grid, write_region_csv, Justification, RegionRow, RegionVerdict, Status};
