//! Reduced energy landscape: pointwise evaluation, stationary points,
//! fold (degenerate point) detection over a one-parameter family, and
//! branch diagrams versus mass.
//!
//! Stationary points are located by a sign scan of `E'` on a log-spaced
//! grid followed by bisection. A cell whose endpoints agree in sign can
//! still hide a pair of roots; when `E''` changes sign inside such a cell
//! the interior extremum of `E'` is located and checked, so a close pair is
//! not silently dropped. The root count is additionally confirmed by
//! doubling the grid until two successive resolutions agree.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{canonical_model, EnergyModel, PhysicalParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LandscapeSample {
    pub sigma: f64,
    pub energy: f64,
    pub grad: f64,
    pub curvature: f64,
}

pub fn evaluate(model: &EnergyModel, sigma: f64) -> Result<LandscapeSample> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
    }
    let sample = LandscapeSample {
        sigma,
        energy: model.energy(sigma),
        grad: model.gradient(sigma),
        curvature: model.curvature(sigma),
    };
    if !(sample.energy.is_finite() && sample.grad.is_finite() && sample.curvature.is_finite()) {
        return Err(Error::NonFinite(format!(
            "landscape of '{}' at sigma = {sigma}",
            model.label()
        )));
    }
    Ok(sample)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Minimum,
    Maximum,
    Degenerate,
}

impl Stability {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stability::Minimum => "minimum",
            Stability::Maximum => "maximum",
            Stability::Degenerate => "degenerate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StationaryPoint {
    pub sigma: f64,
    pub energy: f64,
    /// Residual gradient at the located root.
    pub grad: f64,
    pub curvature: f64,
    pub stability: Stability,
}

/// Closed interval of widths `[lo, hi]` with `0 < lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl Window {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo < hi) {
            return Err(Error::EmptyWindow { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    /// `[10⁻⁶, 10⁶] · σ₀` for the given parameters.
    pub fn scaled(params: &PhysicalParams) -> Self {
        let s0 = params.sigma0();
        Self {
            lo: 1e-6 * s0,
            hi: 1e6 * s0,
        }
    }

    fn contains(&self, sigma: f64) -> bool {
        sigma >= self.lo && sigma <= self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    /// Initial number of log-spaced grid nodes.
    pub nodes: usize,
    /// Ceiling for automatic grid doubling.
    pub max_nodes: usize,
    /// Bisection stops once the bracket is narrower than this, relative.
    pub rel_width: f64,
    /// `|E''| ≤ degeneracy_tol · (curvature scale)` classifies a point as degenerate.
    pub degeneracy_tol: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            nodes: 4096,
            max_nodes: 1 << 20,
            rel_width: 1e-12,
            degeneracy_tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StationaryScan {
    /// Located points in ascending σ.
    pub points: Vec<StationaryPoint>,
    /// Grid resolution at which the root count was accepted.
    pub nodes_used: usize,
    pub warnings: Vec<String>,
}

impl StationaryScan {
    pub fn count(&self) -> usize {
        self.points.len()
    }
}

/// Stationary points of `model` in `window` with default scan options.
pub fn stationary_points(model: &EnergyModel, window: Window) -> Result<StationaryScan> {
    stationary_points_with(model, window, &ScanOptions::default())
}

pub fn stationary_points_with(model: &EnergyModel, window: Window, opts: &ScanOptions) -> Result<StationaryScan> {
    let window = Window::new(window.lo, window.hi)?;
    let mut warnings = Vec::new();
    let mut nodes = opts.nodes.max(2);
    let mut roots = scan_roots(model, window, nodes, opts.rel_width)?;
    loop {
        if nodes * 2 > opts.max_nodes {
            break;
        }
        let finer = scan_roots(model, window, nodes * 2, opts.rel_width)?;
        if finer.len() == roots.len() {
            break;
        }
        roots = finer;
        nodes *= 2;
        if nodes * 2 > opts.max_nodes {
            warnings.push(format!(
                "root count still changing at {nodes} grid nodes; narrow the window or raise max_nodes"
            ));
        }
    }

    let points: Vec<StationaryPoint> = roots
        .into_iter()
        .map(|sigma| classify(model, sigma, opts.degeneracy_tol))
        .collect();

    if let Some((a, b, c)) = model.canonical_coefficients() {
        let closed = canonical_root(a, b, c);
        if window.contains(closed) {
            let matched = points.len() == 1 && ((points[0].sigma - closed) / closed).abs() <= 1e-8;
            if !matched {
                warnings.push(format!(
                    "bracketed roots {:?} disagree with closed-form canonical root {closed}",
                    points.iter().map(|p| p.sigma).collect::<Vec<_>>()
                ));
            }
        }
    }

    Ok(StationaryScan {
        points,
        nodes_used: nodes,
        warnings,
    })
}

/// Unique positive root of `σ⁴E'(σ) = bσ² − 2aσ − 3c`.
pub fn canonical_root(a: f64, b: f64, c: f64) -> f64 {
    (2.0 * a + (4.0 * a * a + 12.0 * b * c).sqrt()) / (2.0 * b)
}

fn classify(model: &EnergyModel, sigma: f64, degeneracy_tol: f64) -> StationaryPoint {
    let curvature = model.curvature(sigma);
    let scale = model.curvature_scale(sigma);
    let stability = if curvature.abs() <= degeneracy_tol * scale {
        Stability::Degenerate
    } else if curvature > 0.0 {
        Stability::Minimum
    } else {
        Stability::Maximum
    };
    StationaryPoint {
        sigma,
        energy: model.energy(sigma),
        grad: model.gradient(sigma),
        curvature,
        stability,
    }
}

fn log_grid(window: Window, nodes: usize) -> Vec<f64> {
    let ratio = (window.hi / window.lo).ln();
    let last = nodes - 1;
    (0..nodes)
        .map(|i| match i {
            0 => window.lo,
            i if i == last => window.hi,
            i => window.lo * (ratio * i as f64 / last as f64).exp(),
        })
        .collect()
}

/// Bisects `f` on `[lo, hi]`, given `f(lo)` whose sign differs from `f(hi)`.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut f_lo: f64, rel_width: f64) -> f64 {
    while hi - lo > rel_width * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn scan_roots(model: &EnergyModel, window: Window, nodes: usize, rel_width: f64) -> Result<Vec<f64>> {
    let xs = log_grid(window, nodes);
    let gs: Vec<f64> = xs.iter().map(|&x| model.gradient(x)).collect();
    if let Some(i) = gs.iter().position(|g| !g.is_finite()) {
        return Err(Error::NonFinite(format!(
            "gradient of '{}' at sigma = {}",
            model.label(),
            xs[i]
        )));
    }
    let grad = |x: f64| model.gradient(x);
    let curv = |x: f64| model.curvature(x);

    let mut roots = Vec::new();
    for i in 0..nodes - 1 {
        let (x0, x1, g0, g1) = (xs[i], xs[i + 1], gs[i], gs[i + 1]);
        if g0 == 0.0 {
            roots.push(x0);
            continue;
        }
        if g1 == 0.0 {
            continue;
        }
        if (g0 < 0.0) != (g1 < 0.0) {
            roots.push(bisect(grad, x0, x1, g0, rel_width));
            continue;
        }
        // Same sign at both ends: look for an interior extremum of E' that
        // dips through zero.
        let (h0, h1) = (curv(x0), curv(x1));
        if (h0 < 0.0) != (h1 < 0.0) && h0 != 0.0 && h1 != 0.0 {
            let xe = bisect(curv, x0, x1, h0, rel_width);
            let ge = grad(xe);
            if ge == 0.0 {
                roots.push(xe);
            } else if (ge < 0.0) != (g0 < 0.0) {
                roots.push(bisect(grad, x0, xe, g0, rel_width));
                roots.push(bisect(grad, xe, x1, ge, rel_width));
            }
        }
    }
    if gs[nodes - 1] == 0.0 {
        roots.push(xs[nodes - 1]);
    }
    Ok(roots)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalPointReport {
    pub found: bool,
    pub mu_critical: Option<f64>,
    pub sigma_critical: Option<f64>,
    pub diagnostics: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoldOptions {
    /// Uniform μ grid size for the coarse count scan.
    pub mu_points: usize,
    /// μ bisection stops at this relative bracket width.
    pub rel_width: f64,
    pub scan: ScanOptions,
}

impl Default for FoldOptions {
    fn default() -> Self {
        Self {
            mu_points: 512,
            rel_width: 1e-10,
            scan: ScanOptions::default(),
        }
    }
}

/// Locates a fold of the family `μ ↦ E_μ` where two stationary points
/// coalesce, using default options.
pub fn find_degenerate<F>(family: F, mu_range: (f64, f64), window: Window) -> Result<CriticalPointReport>
where
    F: Fn(f64) -> Result<EnergyModel>,
{
    find_degenerate_with(family, mu_range, window, &FoldOptions::default())
}

pub fn find_degenerate_with<F>(
    family: F,
    mu_range: (f64, f64),
    window: Window,
    opts: &FoldOptions,
) -> Result<CriticalPointReport>
where
    F: Fn(f64) -> Result<EnergyModel>,
{
    let (mu_lo, mu_hi) = mu_range;
    if !(mu_lo.is_finite() && mu_hi.is_finite() && mu_lo < mu_hi) {
        return Err(Error::InvalidParameter(format!(
            "invalid parameter range [{mu_lo}, {mu_hi}]"
        )));
    }
    let window = Window::new(window.lo, window.hi)?;
    let scan = |mu: f64| -> Result<StationaryScan> {
        let model = family(mu)?;
        stationary_points_with(&model, window, &opts.scan)
    };

    let n = opts.mu_points.max(2);
    let mus: Vec<f64> = (0..n)
        .map(|j| {
            if j == n - 1 {
                mu_hi
            } else {
                mu_lo + (mu_hi - mu_lo) * j as f64 / (n - 1) as f64
            }
        })
        .collect();
    let scans = mus.iter().map(|&mu| scan(mu)).collect::<Result<Vec<_>>>()?;

    let mut notes = vec![format!(
        "stationary points: {} at mu = {mu_lo}, {} at mu = {mu_hi}",
        scans[0].count(),
        scans[n - 1].count()
    )];

    for j in 0..n - 1 {
        if scans[j].count() == scans[j + 1].count() {
            continue;
        }
        let (mut a, mut b) = (mus[j], mus[j + 1]);
        let (mut scan_a, mut scan_b) = (scans[j].clone(), scans[j + 1].clone());
        while (b - a).abs() > opts.rel_width * a.abs().max(b.abs()) {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let s = scan(mid)?;
            if s.count() == scan_a.count() {
                a = mid;
                scan_a = s;
            } else {
                b = mid;
                scan_b = s;
            }
        }
        let (more, fewer) = if scan_a.count() > scan_b.count() {
            (&scan_a, &scan_b)
        } else {
            (&scan_b, &scan_a)
        };
        let mu_c = 0.5 * (a + b);
        match merging_pair(&more.points, window) {
            Some((s0, s1)) => {
                notes.push(format!(
                    "count changes {} -> {} across mu = {mu_c}; merging pair at sigma = {s0}, {s1}",
                    more.count(),
                    fewer.count()
                ));
                return Ok(CriticalPointReport {
                    found: true,
                    mu_critical: Some(mu_c),
                    sigma_critical: Some(0.5 * (s0 + s1)),
                    diagnostics: notes.join("; "),
                });
            }
            None => notes.push(format!(
                "count change {} -> {} near mu = {mu_c} is a root crossing the window boundary, not a fold",
                more.count(),
                fewer.count()
            )),
        }
    }

    notes.push(format!("no fold in mu range [{mu_lo}, {mu_hi}]"));
    Ok(CriticalPointReport {
        found: false,
        mu_critical: None,
        sigma_critical: None,
        diagnostics: notes.join("; "),
    })
}

/// The adjacent pair with the smallest relative gap, provided it is a
/// genuine near-coalescence away from the window edges.
fn merging_pair(points: &[StationaryPoint], window: Window) -> Option<(f64, f64)> {
    let (s0, s1) = points
        .windows(2)
        .map(|w| (w[0].sigma, w[1].sigma))
        .min_by(|x, y| (x.1 / x.0).total_cmp(&(y.1 / y.0)))?;
    let near_edge = |s: f64| (s / window.lo - 1.0).abs() < 1e-6 || (1.0 - s / window.hi).abs() < 1e-6;
    let close = s1 / s0 - 1.0 < 1e-3;
    (close && !near_edge(s0) && !near_edge(s1)).then_some((s0, s1))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchRow {
    pub control: f64,
    pub branch_index: usize,
    pub sigma_star: f64,
    pub energy: f64,
    pub curvature: f64,
    pub stability: Stability,
}

/// Stationary points across a control parameter, sorted by `(control, sigma_star)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchDiagram {
    pub rows: Vec<BranchRow>,
    pub warnings: Vec<String>,
}

/// Canonical-model stationary points for every mass in `masses`.
///
/// `branch_index` is the rank of the point by σ at its mass. The output
/// ordering does not depend on the order of `masses`.
pub fn sweep_mass(params_base: &PhysicalParams, masses: &[f64], window: Window) -> Result<BranchDiagram> {
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for &mass in masses {
        let params = params_base.with_mass(mass)?;
        let scan = stationary_points(&canonical_model(&params), window)?;
        warnings.extend(scan.warnings.iter().map(|w| format!("m = {mass}: {w}")));
        rows.extend(scan.points.iter().enumerate().map(|(k, p)| BranchRow {
            control: mass,
            branch_index: k,
            sigma_star: p.sigma,
            energy: p.energy,
            curvature: p.curvature,
            stability: p.stability,
        }));
    }
    rows.sort_by(|x, y| match x.control.total_cmp(&y.control) {
        Ordering::Equal => x.sigma_star.total_cmp(&y.sigma_star),
        other => other,
    });
    rows.dedup_by(|x, y| x.control == y.control && x.sigma_star == y.sigma_star);
    Ok(BranchDiagram { rows, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn canonical(m: f64, lambda: f64) -> EnergyModel {
        canonical_model(&PhysicalParams::natural(m, lambda).unwrap())
    }

    #[test]
    fn evaluate_canonical_at_unit_width() {
        let s = evaluate(&canonical(1.0, 1.0), 1.0).unwrap();
        let (a, b, c) = (0.75, (2.0 * PI).sqrt().recip(), (2.0 * PI).powf(-1.5));
        assert_relative_eq!(s.energy, a - b + c, max_relative = 1e-12);
        assert_relative_eq!(s.grad, -2.0 * a + b - 3.0 * c, max_relative = 1e-12);
        assert_relative_eq!(s.energy, 0.414_551_4, max_relative = 1e-6);
    }

    #[test]
    fn evaluate_single_inverse_term() {
        let m = EnergyModel::from_pairs(&[(-1.0, -1.0)], "inv").unwrap();
        let s = evaluate(&m, 2.0).unwrap();
        assert_eq!((s.energy, s.grad, s.curvature), (-0.5, 0.25, -0.25));
    }

    #[test]
    fn evaluate_far_field_bound() {
        let m = canonical(1.0, 1.0);
        let b = -m.coefficient(-1.0).unwrap();
        let s = evaluate(&m, 1e6).unwrap();
        assert!(s.energy.abs() <= 2.0 * b / 1e6);
    }

    #[test]
    fn evaluate_rejects_non_positive_width() {
        let m = canonical(1.0, 1.0);
        assert!(evaluate(&m, 0.0).is_err());
        assert!(evaluate(&m, -1.0).is_err());
    }

    #[test]
    fn pure_sn_minimum() {
        let scan = stationary_points(&canonical(1.0, 0.0), Window::new(1e-6, 1e6).unwrap()).unwrap();
        assert_eq!(scan.count(), 1);
        let p = scan.points[0];
        assert_eq!(p.stability, Stability::Minimum);
        assert_relative_eq!(p.sigma, 1.5 * (2.0 * PI).sqrt(), max_relative = 1e-10);
        assert_relative_eq!(p.energy, -1.0 / (6.0 * PI), max_relative = 1e-10);
        assert!(scan.warnings.is_empty());
    }

    #[test]
    fn repulsive_minimum_matches_quadratic_formula() {
        let m = EnergyModel::from_pairs(&[(0.75, -2.0), (-0.398_942_3, -1.0), (0.1, -3.0)], "c").unwrap();
        let scan = stationary_points(&m, Window::new(1e-3, 1e3).unwrap()).unwrap();
        assert_eq!(scan.count(), 1);
        assert_relative_eq!(scan.points[0].sigma, 3.9504, max_relative = 1e-4);
    }

    #[test]
    fn window_excluding_root_is_empty() {
        let scan = stationary_points(&canonical(1.0, 0.0), Window::new(10.0, 20.0).unwrap()).unwrap();
        assert!(scan.points.is_empty());
    }

    #[test]
    fn empty_window_rejected() {
        assert!(Window::new(2.0, 1.0).is_err());
        assert!(Window::new(0.0, 1.0).is_err());
        let bad = Window { lo: 3.0, hi: 3.0 };
        assert!(stationary_points(&canonical(1.0, 1.0), bad).is_err());
    }

    #[test]
    fn hidden_pair_inside_one_cell_is_found() {
        // E'σ⁵ = −((σ−1)² − δ²)(σ−3): roots at 1 ± δ, far closer than one cell.
        let d2 = 1e-10;
        // Expand −(σ² − 2σ + 1 − δ²)(σ − 3) = −σ³ + 5σ² − (7 − δ²)σ + 3(1 − δ²).
        let pairs = [
            (-3.0 * (1.0 - d2) / 4.0, -4.0),
            ((7.0 - d2) / 3.0, -3.0),
            (-2.5, -2.0),
            (1.0, -1.0),
        ];
        let m = EnergyModel::from_pairs(&pairs, "pair").unwrap();
        let scan = stationary_points(&m, Window::new(0.5, 5.0).unwrap()).unwrap();
        let sig: Vec<f64> = scan.points.iter().map(|p| p.sigma).collect();
        assert_eq!(sig.len(), 3, "{sig:?}");
        assert!((sig[0] - (1.0 - 1e-5)).abs() < 1e-9);
        assert!((sig[1] - (1.0 + 1e-5)).abs() < 1e-9);
        assert!((sig[2] - 3.0).abs() < 1e-9);
    }

    #[test]
    fn fold_in_constructed_model() {
        let family = |mu: f64| {
            EnergyModel::from_pairs(
                &[(-0.75 * mu, -4.0), (7.0 / 3.0, -3.0), (-2.5, -2.0), (1.0, -1.0)],
                "fold",
            )
        };
        let window = Window::new(0.2, 10.0).unwrap();
        let rep = find_degenerate(family, (0.8, 1.5), window).unwrap();
        assert!(rep.found, "{}", rep.diagnostics);
        assert!((rep.sigma_critical.unwrap() - 1.0).abs() <= 1e-6, "{}", rep.diagnostics);
        assert!((rep.mu_critical.unwrap() - 1.0).abs() <= 1e-8);
        // σ⁵E' = 3μ − 7σ + 5σ² − σ³ also folds at its other extremum σ = 7/3, μ = 49/81.
        let rep = find_degenerate(family, (0.5, 0.8), window).unwrap();
        assert!(
            (rep.sigma_critical.unwrap() - 7.0 / 3.0).abs() <= 1e-6,
            "{}",
            rep.diagnostics
        );
        assert!((rep.mu_critical.unwrap() - 49.0 / 81.0).abs() <= 1e-8);
    }

    #[test]
    fn canonical_family_has_no_fold() {
        let base = PhysicalParams::natural(1.0, 1.0).unwrap();
        let family = |m: f64| Ok(canonical_model(&base.with_mass(m)?));
        let rep = find_degenerate(family, (0.1, 10.0), Window::new(1e-6, 1e6).unwrap()).unwrap();
        assert!(!rep.found);
        assert!(rep.diagnostics.contains("1 at mu = 0.1"), "{}", rep.diagnostics);
    }

    #[test]
    fn single_term_family_has_no_fold() {
        let family = |mu: f64| EnergyModel::from_pairs(&[(mu, -2.0)], "kinetic");
        let rep = find_degenerate(family, (0.5, 2.0), Window::new(0.1, 10.0).unwrap()).unwrap();
        assert!(!rep.found);
    }

    #[test]
    fn boundary_crossing_is_not_a_fold() {
        // Minimum at σ* = 2a/b moves through the window edge as μ = a varies.
        let family = |mu: f64| EnergyModel::from_pairs(&[(mu, -2.0), (-1.0, -1.0)], "shift");
        let rep = find_degenerate(family, (0.5, 3.0), Window::new(0.5, 4.0).unwrap()).unwrap();
        assert!(!rep.found, "{}", rep.diagnostics);
        assert!(rep.diagnostics.contains("boundary"));
    }

    #[test]
    fn non_finite_family_is_an_error() {
        let family = |mu: f64| EnergyModel::from_pairs(&[(mu, -2.0), (-1.0, -1.0)], "nan");
        assert!(find_degenerate(family, (f64::NAN, 1.0), Window::new(0.1, 1.0).unwrap()).is_err());
        let blowup = |mu: f64| EnergyModel::from_pairs(&[(1.0 / (mu - mu), -2.0)], "inf");
        assert!(find_degenerate(blowup, (0.5, 1.0), Window::new(0.1, 1.0).unwrap()).is_err());
    }

    #[test]
    fn sweep_examples() {
        let base = PhysicalParams::natural(1.0, 1.0).unwrap();
        let w = Window::new(1e-6, 1e6).unwrap();
        let d = sweep_mass(&base, &[1.0], w).unwrap();
        assert_eq!(d.rows.len(), 1);
        let (a, b, c) = (0.75, (2.0 * PI).sqrt().recip(), (2.0 * PI).powf(-1.5));
        let expected = (a + (a * a + 3.0 * b * c).sqrt()) / b;
        assert_relative_eq!(d.rows[0].sigma_star, expected, max_relative = 1e-10);
        assert_relative_eq!(d.rows[0].sigma_star, 3.882_908_2, max_relative = 1e-7);
        assert_eq!(d.rows[0].stability, Stability::Minimum);
        let d2 = sweep_mass(&base, &[2.0], w).unwrap();
        assert_relative_eq!(d2.rows[0].sigma_star, 0.6528, max_relative = 1e-4);
    }

    #[test]
    fn sweep_order_independent_and_monotone() {
        let base = PhysicalParams::natural(1.0, 1.0).unwrap();
        let w = Window::new(1e-6, 1e6).unwrap();
        let fwd = sweep_mass(&base, &[0.5, 1.0, 2.0], w).unwrap();
        let rev = sweep_mass(&base, &[2.0, 0.5, 1.0], w).unwrap();
        assert_eq!(fwd, rev);
        let s: Vec<f64> = fwd.rows.iter().map(|r| r.sigma_star).collect();
        assert!(s[0] > s[1] && s[1] > s[2]);
    }

    #[test]
    fn sweep_rejects_bad_mass() {
        let base = PhysicalParams::natural(1.0, 1.0).unwrap();
        assert!(sweep_mass(&base, &[1.0, -2.0], Window::new(1e-3, 1e3).unwrap()).is_err());
    }
}
