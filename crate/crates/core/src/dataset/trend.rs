//! Least-squares trend of the home goal share over time.

use super::PeriodSpec;
use crate::error::{Error, Result};

/// Years past the last sample within which a 0.5 crossing still counts as a
/// forecastable vanishing of the home advantage.
const VANISH_HORIZON_YEARS: f64 = 200.0;

/// Fitted line through `(year, p_home)` points.
#[derive(Debug, Clone, PartialEq)]
pub struct TrendFit {
    /// Change of the home share per decade (10 × the per-year slope).
    pub slope_per_decade: f64,
    /// Ordinary least-squares intercept at year zero.
    pub intercept: f64,
    /// Label of the season period in which the fitted line crosses 0.5,
    /// when that happens within the horizon.
    pub vanish_period: Option<String>,
}

/// Ordinary least squares over `(period midpoint year, home share)` points.
///
/// The slope is reported per decade. The home advantage "vanishes" where
/// the fitted line reaches an even share of 0.5; that year is mapped onto
/// the period scheme's (possibly extrapolated) bucket label.
pub fn fit_home_share_trend(series: &[(f64, f64)], periods: &PeriodSpec) -> Result<TrendFit> {
    if series.len() < 2 {
        return Err(Error::EmptyInput("trend fit needs at least two points"));
    }
    let n = series.len() as f64;
    let mean_x = series.iter().map(|(x, _)| x).sum::<f64>() / n;
    let mean_y = series.iter().map(|(_, y)| y).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(x, y) in series {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    if sxx == 0.0 {
        return Err(Error::DegenerateTrend);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;

    let vanish_period = if slope == 0.0 {
        None
    } else {
        let crossing = (0.5 - intercept) / slope;
        let last_x = series
            .iter()
            .map(|(x, _)| *x)
            .fold(f64::NEG_INFINITY, f64::max);
        (crossing.is_finite() && crossing <= last_x + VANISH_HORIZON_YEARS)
            .then(|| periods.label_containing_year(crossing))
    };

    Ok(TrendFit {
        slope_per_decade: 10.0 * slope,
        intercept,
        vanish_period,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Season;

    fn league_periods() -> PeriodSpec {
        PeriodSpec::decades(Season::new(1963), Season::new(2021)).unwrap()
    }

    fn standard_midpoints() -> Vec<f64> {
        league_periods()
            .buckets()
            .iter()
            .map(|b| b.midpoint_year())
            .collect()
    }

    #[test]
    fn exact_line_recovers_slope() {
        // two points per decade, slope −0.02/decade by construction
        let series: Vec<(f64, f64)> = (0..6)
            .map(|i| (1967.0 + 10.0 * i as f64, 0.66 - 0.02 * i as f64))
            .collect();
        let fit = fit_home_share_trend(&series, &league_periods()).unwrap();
        assert!((fit.slope_per_decade - (-0.02)).abs() < 1e-9);
    }

    #[test]
    fn declining_share_vanishes_in_the_expected_period() {
        // calibrated line: 0.5 crossing at 2036.5 with −2% per decade
        let series: Vec<(f64, f64)> = standard_midpoints()
            .into_iter()
            .map(|year| (year, 0.5 - 0.002 * (year - 2036.5)))
            .collect();
        let fit = fit_home_share_trend(&series, &league_periods()).unwrap();
        assert!((fit.slope_per_decade - (-0.02)).abs() < 1e-9);
        assert_eq!(fit.vanish_period.as_deref(), Some("2032/33 – 2041/42"));
    }

    #[test]
    fn constant_series_never_vanishes() {
        let series: Vec<(f64, f64)> = standard_midpoints()
            .into_iter()
            .map(|year| (year, 0.6))
            .collect();
        let fit = fit_home_share_trend(&series, &league_periods()).unwrap();
        assert_eq!(fit.slope_per_decade, 0.0);
        assert_eq!(fit.vanish_period, None);
    }

    #[test]
    fn crossing_beyond_horizon_is_dropped() {
        // −0.02 per CENTURY: crossing sits ~800 years out
        let series = vec![(2000.0, 0.66), (2100.0, 0.64)];
        let fit = fit_home_share_trend(&series, &league_periods()).unwrap();
        assert!(fit.vanish_period.is_none());
    }

    #[test]
    fn too_few_or_degenerate_points_error() {
        assert!(fit_home_share_trend(&[(2000.0, 0.6)], &league_periods()).is_err());
        assert!(matches!(
            fit_home_share_trend(&[(2000.0, 0.6), (2000.0, 0.5)], &league_periods()),
            Err(Error::DegenerateTrend)
        ));
    }
}
