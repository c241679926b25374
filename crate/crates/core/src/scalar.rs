use nalgebra::RealField;

use crate::numerics::TolerancePolicy;

/// Floating-point scalar usable by the numeric layers.
pub trait Real: RealField + Copy + Send + Sync + 'static {
    /// Default thresholds for this precision.
    fn default_tolerance() -> TolerancePolicy<Self>;

    /// Relative threshold below which trailing polynomial coefficients are dropped.
    fn trim_rel() -> Self;

    /// Relative threshold for declaring a resultant zero.
    fn resultant_rel() -> Self;

    fn of(x: f64) -> Self {
        nalgebra::convert(x)
    }

    fn to_f64(self) -> f64 {
        nalgebra::try_convert::<Self, f64>(self).unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn default_tolerance() -> TolerancePolicy<f64> {
        TolerancePolicy { rank_rel: 1e-10, psd_abs: 1e-9, boundary_re: 1e-8, match_rel: 1e-9 }
    }

    fn trim_rel() -> f64 {
        1e-12
    }

    fn resultant_rel() -> f64 {
        1e-12
    }
}

impl Real for f32 {
    fn default_tolerance() -> TolerancePolicy<f32> {
        TolerancePolicy { rank_rel: 1e-4, psd_abs: 1e-4, boundary_re: 1e-3, match_rel: 1e-4 }
    }

    fn trim_rel() -> f32 {
        1e-5
    }

    fn resultant_rel() -> f32 {
        1e-5
    }
}
