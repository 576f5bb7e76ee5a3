//! Vanishing-viscosity sweeps: paired runs, the three-band error split, inequality audits and rate fits.

pub mod audits;
pub mod config;
pub mod fit;
pub mod osgood;
pub mod report;
pub mod split;
pub mod sweep;

pub use audits::{
    centered_derivative, commutator_bound_audit, delta_series, median_spread, normalizer, ode_audit, Derivative,
    Normalizer, OdeAudit,
};
pub use config::{uniform_times, InitialData, SweepConfig};
pub use fit::{least_squares, rate_fit, MemberInput, RateFit};
pub use osgood::{mu, osgood_envelope};
pub use report::{MemberReport, RateReport, Uniformity, CSV_HEADER};
pub use split::{band_bound_audit, mid_band_log_check, three_term_split, BandAudit, Split};
pub use sweep::{initial_vorticity, measure_pair, run_pair, run_sweep, sample_metrics, MemberSeries, PairRecord, SampleMetrics, Sweep};
