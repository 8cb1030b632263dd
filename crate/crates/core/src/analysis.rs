//! Degree histograms and log-log power-law tail fits.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::DegreeVector;
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error(
        "no nodes to histogram (empty degree vector, or all degrees zero with zeros excluded)"
    )]
    NoNodes,
    #[error("logarithmic bin ratio must exceed 1, got {0}")]
    BadRatio(f64),
    #[error("power-law fit needs at least 3 non-empty bins at or above k_min, found {0}")]
    TooFewBins(usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Binning {
    /// Unit-width bins on integer edges.
    Linear,
    /// Edges `1, r, r^2, ...`, preceded by `[0, 1)` when needed.
    Logarithmic { ratio: f64 },
}

impl Default for Binning {
    fn default() -> Self {
        Binning::Logarithmic { ratio: 1.5 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HistogramBin {
    pub low: f64,
    pub high: f64,
    /// Representative degree: geometric mean of the edges for logarithmic
    /// bins, midpoint otherwise.
    pub centre: f64,
    pub count: usize,
    pub density: f64,
}

impl HistogramBin {
    pub fn width(&self) -> f64 {
        self.high - self.low
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeHistogram {
    pub bins: Vec<HistogramBin>,
    pub binning: Binning,
    pub total_nodes: usize,
}

impl DegreeHistogram {
    /// `sum density * width`; 1 up to rounding for a histogram built from data.
    pub fn mass(&self) -> f64 {
        self.bins.iter().map(|b| b.density * b.width()).sum()
    }
}

/// Probability density of the degree distribution, `count / (total * width)`
/// per bin. Nodes of degree zero are only counted with `include_zero`.
pub fn degree_histogram<T: Scalar>(
    deg: &DegreeVector<T>,
    binning: Binning,
    include_zero: bool,
) -> Result<DegreeHistogram, AnalysisError> {
    let values: Vec<f64> = deg
        .as_slice()
        .iter()
        .map(|k| k.as_f64())
        .filter(|&k| include_zero || k > 0.0)
        .collect();
    if values.is_empty() {
        return Err(AnalysisError::NoNodes);
    }
    let max = values.iter().copied().fold(f64::MIN, f64::max);
    let needs_sub_unit = values.iter().any(|&k| k < 1.0);

    let mut edges: Vec<f64> = Vec::new();
    match binning {
        Binning::Linear => {
            let first = if needs_sub_unit { 0.0 } else { 1.0 };
            let last = max.floor() + 1.0;
            let mut e = first;
            while e <= last {
                edges.push(e);
                e += 1.0;
            }
        }
        Binning::Logarithmic { ratio } => {
            if !(ratio > 1.0 && ratio.is_finite()) {
                return Err(AnalysisError::BadRatio(ratio));
            }
            if needs_sub_unit {
                edges.push(0.0);
            }
            let mut e = 1.0;
            edges.push(e);
            while e <= max {
                e *= ratio;
                edges.push(e);
            }
        }
    }

    let mut counts = vec![0usize; edges.len() - 1];
    for &k in &values {
        let idx = edges.partition_point(|&e| e <= k) - 1;
        counts[idx] += 1;
    }
    let total = values.len();
    let bins = edges
        .windows(2)
        .zip(counts)
        .map(|(w, count)| {
            let (low, high) = (w[0], w[1]);
            let centre = match binning {
                Binning::Logarithmic { .. } if low > 0.0 => (low * high).sqrt(),
                _ => 0.5 * (low + high),
            };
            HistogramBin {
                low,
                high,
                centre,
                count,
                density: count as f64 / (total as f64 * (high - low)),
            }
        })
        .collect();
    Ok(DegreeHistogram {
        bins,
        binning,
        total_nodes: total,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerLawFit {
    pub gamma: f64,
    pub intercept: f64,
    pub k_min: f64,
    pub r_squared: f64,
    pub points_used: usize,
}

/// Least-squares line through `(ln centre, ln density)` for the non-empty
/// bins whose centre is at least `k_min`; `gamma` is minus the slope.
pub fn fit_power_law(hist: &DegreeHistogram, k_min: f64) -> Result<PowerLawFit, AnalysisError> {
    let points: Vec<(f64, f64)> = hist
        .bins
        .iter()
        .filter(|b| b.density > 0.0 && b.centre > 0.0 && b.centre >= k_min)
        .map(|b| (b.centre.ln(), b.density.ln()))
        .collect();
    if points.len() < 3 {
        return Err(AnalysisError::TooFewBins(points.len()));
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in &points {
        let (dx, dy) = (x - mean_x, y - mean_y);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(AnalysisError::TooFewBins(1));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = points
        .iter()
        .map(|&(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let r_squared = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    Ok(PowerLawFit {
        gamma: -slope,
        intercept,
        k_min,
        r_squared,
        points_used: points.len(),
    })
}

/// 10th percentile (nearest rank) of the nonzero degrees, or 1 if none.
pub fn default_k_min<T: Scalar>(deg: &DegreeVector<T>) -> f64 {
    let mut nonzero: Vec<f64> = deg
        .as_slice()
        .iter()
        .map(|k| k.as_f64())
        .filter(|&k| k > 0.0)
        .collect();
    if nonzero.is_empty() {
        return 1.0;
    }
    nonzero.sort_by(f64::total_cmp);
    let rank = ((0.1 * nonzero.len() as f64).ceil() as usize).max(1);
    nonzero[rank - 1]
}

/// Plot-ready `k_centre density` lines for the non-empty bins, plus a
/// trailing `# gamma=.. kmin=.. r2=..` comment when a fit is given.
pub fn format_histogram(hist: &DegreeHistogram, fit: Option<&PowerLawFit>) -> String {
    let mut out = String::new();
    for b in hist.bins.iter().filter(|b| b.count > 0) {
        let _ = writeln!(out, "{:.6} {:.9e}", b.centre, b.density);
    }
    if let Some(f) = fit {
        let _ = writeln!(
            out,
            "# gamma={:.6} kmin={} r2={:.6}",
            f.gamma, f.k_min, f.r_squared
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn noiseless(gamma: f64, scale: f64) -> DegreeHistogram {
        let bins = (0..12)
            .map(|i| {
                let k = 1.5f64.powi(i);
                HistogramBin {
                    low: k / 1.5f64.sqrt(),
                    high: k * 1.5f64.sqrt(),
                    centre: k,
                    count: 1,
                    density: scale * k.powf(-gamma),
                }
            })
            .collect();
        DegreeHistogram {
            bins,
            binning: Binning::default(),
            total_nodes: 12,
        }
    }

    #[test]
    fn linear_single_bin() {
        let h = degree_histogram(&DegreeVector(vec![1.0; 4]), Binning::Linear, false).unwrap();
        assert_eq!(h.bins.len(), 1);
        assert_eq!((h.bins[0].low, h.bins[0].density), (1.0, 1.0));
    }

    #[test]
    fn zero_degrees_excluded_on_request() {
        let deg = DegreeVector(vec![0.0, 0.0, 1.0, 1.0]);
        let h = degree_histogram(&deg, Binning::Linear, false).unwrap();
        assert_eq!(h.total_nodes, 2);
        let h = degree_histogram(&deg, Binning::Linear, true).unwrap();
        assert_eq!(h.total_nodes, 4);
        assert_eq!(h.bins[0].density, 0.5);
        assert!((h.mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn all_zero_without_zeros_is_an_error() {
        let deg = DegreeVector(vec![0.0f64; 3]);
        assert_eq!(
            degree_histogram(&deg, Binning::default(), false),
            Err(AnalysisError::NoNodes)
        );
        assert!(degree_histogram(&deg, Binning::default(), true).is_ok());
    }

    #[test]
    fn log_bins_cover_weighted_degrees() {
        let deg = DegreeVector(vec![0.3, 1.0, 1.2, 2.0, 7.5, 40.0]);
        let h = degree_histogram(&deg, Binning::Logarithmic { ratio: 2.0 }, false).unwrap();
        assert_eq!(h.bins[0].low, 0.0);
        assert_eq!(h.bins.iter().map(|b| b.count).sum::<usize>(), 6);
        assert!((h.mass() - 1.0).abs() < 1e-12);
        assert!(h
            .bins
            .windows(2)
            .all(|w| w[0].high == w[1].low && w[0].low < w[1].low));
        assert_eq!(
            degree_histogram(&deg, Binning::Logarithmic { ratio: 1.0 }, false),
            Err(AnalysisError::BadRatio(1.0))
        );
    }

    #[test]
    fn recovers_noiseless_exponent() {
        for gamma in [1.5, 1.8, 2.1, 3.0, 4.0] {
            let fit = fit_power_law(&noiseless(gamma, 0.37), 1.0).unwrap();
            assert!((fit.gamma - gamma).abs() < 1e-6, "{gamma}: {fit:?}");
            assert!((fit.r_squared - 1.0).abs() < 1e-9);
            assert_eq!(fit.points_used, 12);
        }
    }

    #[test]
    fn exponent_ignores_density_scale() {
        let a = fit_power_law(&noiseless(2.1, 1.0), 1.0).unwrap();
        let b = fit_power_law(&noiseless(2.1, 1e-4), 1.0).unwrap();
        assert!((a.gamma - b.gamma).abs() < 1e-9);
    }

    #[test]
    fn cutoff_and_too_few_bins() {
        let h = noiseless(2.1, 1.0);
        let fit = fit_power_law(&h, 10.0).unwrap();
        assert_eq!(fit.points_used, 6);
        assert_eq!(fit_power_law(&h, 50.0), Err(AnalysisError::TooFewBins(2)));
    }

    #[test]
    fn default_cutoff_is_tenth_percentile() {
        let deg = DegreeVector((0..=20).map(|k| k as f64).collect());
        assert_eq!(default_k_min(&deg), 2.0);
        assert_eq!(default_k_min(&DegreeVector(vec![0.0f64; 2])), 1.0);
    }

    #[test]
    fn histogram_text() {
        let h =
            degree_histogram(&DegreeVector(vec![1.0, 1.0, 2.0]), Binning::Linear, false).unwrap();
        let fit = PowerLawFit {
            gamma: 2.1,
            intercept: 0.0,
            k_min: 1.0,
            r_squared: 0.99,
            points_used: 3,
        };
        let text = format_histogram(&h, Some(&fit));
        assert_eq!(
            text,
            "1.500000 6.666666667e-1\n2.500000 3.333333333e-1\n# gamma=2.100000 kmin=1 r2=0.990000\n"
        );
    }
}
