//! Empirical checks of generator quality: orbit certification, position
//! with respect to projective subspaces, exponential sums and discrepancy.
//!
//! Every report echoes its parameters and carries [`SCHEMA_VERSION`] so
//! that serialized output is self-describing.

mod discrepancy;
mod expsum;
mod orbit;
mod uniformity;

pub use discrepancy::{
    discrepancy_report, discrepancy_trend, star_discrepancy, trend_csv, DiscrepancyReport,
    StarDiscrepancy, S1_SAMPLE_LIMIT, S2_SAMPLE_LIMIT,
};
pub use expsum::{
    exp_sum_bound, exp_sum_check, second_moment_report, ExpSumReport, SecondMomentReport,
    EXP_SUM_LIMIT, MOMENT_LIMIT,
};
pub use orbit::{full_orbit_certify, OrbitCertificate, ORBIT_LIMIT};
pub use uniformity::{subspace_uniformity_check, UniformityReport, Violation};

/// Version stamp written into every JSON report and CSV series.
pub const SCHEMA_VERSION: u32 = 1;
