use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::sample::Sample;

/// High-temperature asymptote `c_m/R = a/T²` valid from `t_start` upward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailModel {
    /// `a` in K².
    pub coefficient: f64,
    pub t_start: f64,
}

impl TailModel {
    pub fn new(coefficient: f64, t_start: f64) -> Result<Self> {
        if !(coefficient >= 0.0) {
            return Err(Error::OutOfRange {
                name: "tail coefficient",
                value: coefficient,
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        if !(t_start > 0.0) {
            return Err(Error::NonPositive {
                name: "tail start temperature",
                value: t_start,
            });
        }
        Ok(Self {
            coefficient,
            t_start,
        })
    }

    /// `∫_{t_start}^∞ a/T² dT`.
    pub fn integral(&self) -> f64 {
        self.coefficient / self.t_start
    }

    /// `c_m/R` on the asymptote.
    pub fn value_at(&self, t: f64) -> f64 {
        self.coefficient / (t * t)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Rows whose negative values were clamped to zero.
    pub clamped_rows: Vec<usize>,
}

/// `∫₀^∞ c_m/R dT` from sampled data plus an optional analytic tail.
///
/// The data contribute a trapezoid sum, with a straight ramp from `(0, 0)`
/// to the first sample. Negative samples are clamped to zero and reported.
/// Gaps between the last sample and `t_start` are bridged linearly toward
/// the tail's value at `t_start`.
pub fn integrate_series_with_tail(series: &[Sample], tail: Option<&TailModel>) -> Result<Integral> {
    let mut clamped_rows = Vec::new();
    let mut prev_t = 0.0;
    let mut prev_v = 0.0;
    let mut sum = 0.0;
    for (row, s) in series.iter().enumerate() {
        if !s.t.is_finite() || !s.value.is_finite() {
            return Err(Error::NotFinite {
                name: "series value",
            });
        }
        if !(s.t > prev_t) {
            return Err(Error::Unsorted { row, t: s.t });
        }
        let v = if s.value < 0.0 {
            clamped_rows.push(row);
            0.0
        } else {
            s.value
        };
        sum += 0.5 * (s.t - prev_t) * (v + prev_v);
        prev_t = s.t;
        prev_v = v;
    }

    if let Some(tail) = tail {
        if tail.t_start < prev_t {
            return Err(Error::OutOfRange {
                name: "tail start temperature",
                value: tail.t_start,
                lo: prev_t,
                hi: f64::INFINITY,
            });
        }
        if tail.t_start > prev_t && !series.is_empty() {
            sum += 0.5 * (tail.t_start - prev_t) * (prev_v + tail.value_at(tail.t_start));
        }
        sum += tail.integral();
    }

    Ok(Integral {
        value: sum,
        clamped_rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn tail_only() {
        let tail = TailModel::new(6.6, 4.0).unwrap();
        let i = integrate_series_with_tail(&[], Some(&tail)).unwrap();
        assert_abs_diff_eq!(i.value, 1.65, epsilon = 1e-15);
    }

    #[test]
    fn single_zero_point() {
        let i = integrate_series_with_tail(&[Sample::new(1.0, 0.0)], None).unwrap();
        assert_eq!(i.value, 0.0);
    }

    #[test]
    fn ramp_from_origin() {
        // linear function is integrated exactly
        let s: Vec<_> = (1..=10)
            .map(|k| Sample::new(k as f64, 2.0 * k as f64))
            .collect();
        let i = integrate_series_with_tail(&s, None).unwrap();
        assert_abs_diff_eq!(i.value, 100.0, epsilon = 1e-12);
    }

    #[test]
    fn unsorted_and_duplicate_rejected() {
        let s = [Sample::new(2.0, 1.0), Sample::new(1.0, 1.0)];
        assert_eq!(
            integrate_series_with_tail(&s, None),
            Err(Error::Unsorted { row: 1, t: 1.0 })
        );
        let s = [Sample::new(1.0, 1.0), Sample::new(1.0, 1.0)];
        assert!(integrate_series_with_tail(&s, None).is_err());
    }

    #[test]
    fn negative_values_are_clamped_and_reported() {
        let s = [
            Sample::new(1.0, 1.0),
            Sample::new(2.0, -0.5),
            Sample::new(3.0, 1.0),
        ];
        let i = integrate_series_with_tail(&s, None).unwrap();
        assert_eq!(i.clamped_rows, [1]);
        assert_abs_diff_eq!(i.value, 0.5 + 0.5 + 0.5, epsilon = 1e-15);
    }

    #[test]
    fn tail_must_start_after_data() {
        let tail = TailModel::new(1.0, 1.0).unwrap();
        let s = [Sample::new(2.0, 0.1)];
        assert!(integrate_series_with_tail(&s, Some(&tail)).is_err());
        assert!(TailModel::new(-1.0, 1.0).is_err());
        assert!(TailModel::new(1.0, 0.0).is_err());
    }
}
