//! Factor complexity, regulators, balance, powers, densities, covers and tilings.

mod balance;
mod cover;
mod density;
mod factors;
mod powers;
mod progression;
mod prouhet;
mod regulator;

pub use balance::{is_balanced, BalanceReport, BalanceViolation};
pub use cover::{
    is_quasiperiod, is_tiling_period, quasiperiods, tiling_periods, Pattern, QuasiperiodReport,
    TilingReport, DESK_LIMIT,
};
pub use density::{am_estimate, besicovitch_density, cesaro_estimate, frequency, AmReport, FrequencyReport};
pub use factors::{entropy_estimate, periodicity_screen, subword_complexity, ComplexityReport, ScreenReport, SCREEN_MAX_N};
pub use powers::{detect_powers, detect_powers_upto, PowerKind, PowerReport, PowerRun};
pub use progression::{progression_witness, ProgressionWitness};
pub use prouhet::{prouhet_partition, ProuhetPartition, PROUHET_MAX_N};
pub use regulator::{
    ap_coefficient, certified_regulator, certified_upper, empirical_regulator, prefix_regulator,
    ApReport, ApRow, RegulatorKind, RegulatorReport,
};
