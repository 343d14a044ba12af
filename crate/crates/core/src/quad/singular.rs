//! Composite Gauss–Legendre integration of singular integrands on graded meshes.

use super::gauss::cached_legendre;
use super::mesh::{build_panels, half_depth, refine_theta, GradedMesh, GradedSite, Panel, PanelTag};
use super::QuadError;
use crate::expand::{SingularFunction, Site};
use crate::numeric::Neumaier;
use crate::par::map_indexed;

/// Knobs of the composite rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationOptions {
    pub grading_ratio: f64,
    pub panel_order: usize,
    /// Largest panel span in `θ = arccos x`; `None` disables the split.
    pub max_theta_span: Option<f64>,
    /// Target size of the neglected innermost region, relative to the local scale.
    pub depth_target: f64,
    /// Upper bound on the fine grading depth per site.
    pub max_depth: usize,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        Self {
            grading_ratio: 0.15,
            panel_order: 24,
            max_theta_span: None,
            depth_target: 1e-24,
            max_depth: 340,
        }
    }
}

/// A family of kernels evaluated together at each node.
pub trait KernelBatch: Sync {
    fn len(&self) -> usize;
    fn fill(&self, x: f64, out: &mut [f64]);
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

struct SingleKernel<F>(F);

impl<F: Fn(f64) -> f64 + Sync> KernelBatch for SingleKernel<F> {
    fn len(&self) -> usize {
        1
    }
    fn fill(&self, x: f64, out: &mut [f64]) {
        out[0] = (self.0)(x);
    }
}

/// Values and error estimates of a batch of integrals.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchIntegral {
    pub values: Vec<f64>,
    pub err_ests: Vec<f64>,
}

const MAX_CHUNKS: usize = 64;

fn grading_sites(
    f: &SingularFunction,
    a: f64,
    b: f64,
    opts: &IntegrationOptions,
    growth: f64,
) -> Vec<GradedSite> {
    let max_half = opts.max_depth / 2;
    let mut out = Vec::new();
    for site in f.sites() {
        let pos = site.position();
        if pos < a || pos > b {
            continue;
        }
        let (e, mu) = f.local_behaviour(site).unwrap_or((0.0, 0));
        if mu == 0 && e >= 0.0 && e.fract() == 0.0 {
            if !matches!(site, Site::Interior(_)) || e % 2.0 == 0.0 {
                continue;
            }
        }
        let length = (b - a).min(2.0);
        let h = half_depth(e, mu, length, opts.grading_ratio, opts.depth_target, max_half);
        let h = ((h as f64 * growth).ceil() as usize).clamp(2, max_half);
        out.push(GradedSite { position: pos, half_depth: h });
    }
    out
}

fn panels_for(
    f: &SingularFunction,
    a: f64,
    b: f64,
    opts: &IntegrationOptions,
    growth: f64,
) -> Vec<Panel> {
    let sites = grading_sites(f, a, b, opts, growth);
    let panels = build_panels(a, b, &sites, opts.grading_ratio);
    match opts.max_theta_span {
        Some(span) => refine_theta(panels, span),
        None => panels,
    }
}

/// The fine mesh that `integrate_singular` would use for `f` on `[a, b]`.
pub fn graded_mesh(f: &SingularFunction, a: f64, b: f64, opts: &IntegrationOptions) -> GradedMesh {
    let panels = panels_for(f, a, b, opts, 1.0);
    let per_site = grading_sites(f, a, b, opts, 1.0).first().map(|s| 2 * s.half_depth).unwrap_or(0);
    GradedMesh::from_panels(&panels, opts.grading_ratio, per_site, opts.panel_order)
}

struct ChunkSums {
    shared: Vec<Neumaier>,
    fine: Vec<Neumaier>,
    coarse: Vec<Neumaier>,
}

fn evaluate(
    f: &SingularFunction,
    kernels: &dyn KernelBatch,
    panels: &[Panel],
    order: usize,
) -> (Vec<f64>, Vec<f64>) {
    let k = kernels.len();
    let rule = cached_legendre(order);
    let n_chunks = panels.len().clamp(1, MAX_CHUNKS);
    let per = panels.len().div_ceil(n_chunks);
    let chunks: Vec<ChunkSums> = map_indexed(n_chunks, |c| {
        let mut sums = ChunkSums {
            shared: vec![Neumaier::default(); k],
            fine: vec![Neumaier::default(); k],
            coarse: vec![Neumaier::default(); k],
        };
        let mut vals = vec![0.0; k];
        let lo = (c * per).min(panels.len());
        let hi = ((c + 1) * per).min(panels.len());
        for p in &panels[lo..hi] {
            let target = match p.tag {
                PanelTag::Shared => &mut sums.shared,
                PanelTag::FineOnly => &mut sums.fine,
                PanelTag::CoarseOnly => &mut sums.coarse,
            };
            for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
                let (pt, jac) = p.map(t);
                let fv = f.eval_at(&pt) * w * jac;
                if fv == 0.0 || !fv.is_finite() {
                    continue;
                }
                kernels.fill(pt.x, &mut vals);
                for (acc, &v) in target.iter_mut().zip(&vals) {
                    acc.add(fv * v);
                }
            }
        }
        sums
    });
    let mut shared = vec![Neumaier::default(); k];
    let mut fine = vec![Neumaier::default(); k];
    let mut coarse = vec![Neumaier::default(); k];
    for ch in &chunks {
        for i in 0..k {
            shared[i].merge(&ch.shared[i]);
            fine[i].merge(&ch.fine[i]);
            coarse[i].merge(&ch.coarse[i]);
        }
    }
    let values = (0..k)
        .map(|i| {
            let mut s = shared[i];
            s.merge(&fine[i]);
            s.sum()
        })
        .collect();
    let errs = (0..k).map(|i| (fine[i].sum() - coarse[i].sum()).abs()).collect();
    (values, errs)
}

/// `∫_a^b f(x) k_i(x) dx` for every kernel of the batch, with per-kernel
/// tolerances. The grading depth grows until every estimate meets its tolerance.
pub fn integrate_batch(
    f: &SingularFunction,
    a: f64,
    b: f64,
    kernels: &dyn KernelBatch,
    tols: &[f64],
    opts: &IntegrationOptions,
) -> Result<BatchIntegral, QuadError> {
    if !(a >= -1.0 && b <= 1.0 && a <= b) {
        return Err(QuadError::Interval { a, b });
    }
    assert_eq!(tols.len(), kernels.len(), "one tolerance per kernel");
    if a == b || kernels.is_empty() {
        return Ok(BatchIntegral { values: vec![0.0; kernels.len()], err_ests: vec![0.0; kernels.len()] });
    }
    let mut growth = 1.0;
    loop {
        let panels = panels_for(f, a, b, opts, growth);
        let (values, err_ests) = evaluate(f, kernels, &panels, opts.panel_order);
        let bad = err_ests.iter().zip(tols).position(|(e, t)| !(e <= t));
        let at_max = grading_sites(f, a, b, opts, growth)
            .iter()
            .all(|s| s.half_depth >= opts.max_depth / 2);
        match bad {
            None => return Ok(BatchIntegral { values, err_ests }),
            Some(i) if at_max => {
                return Err(QuadError::NoConvergence {
                    index: i,
                    value: values[i],
                    err_est: err_ests[i],
                    tol: tols[i],
                })
            }
            Some(_) => growth *= 1.5,
        }
    }
}

/// `∫_a^b f(x) kernel(x) dx` with an error estimate from halving the grading depth.
pub fn integrate_singular<K>(
    f: &SingularFunction,
    kernel: K,
    interval: (f64, f64),
    tol: f64,
) -> Result<(f64, f64), QuadError>
where
    K: Fn(f64) -> f64 + Sync,
{
    integrate_singular_with(f, kernel, interval, tol, &IntegrationOptions::default())
}

pub fn integrate_singular_with<K>(
    f: &SingularFunction,
    kernel: K,
    interval: (f64, f64),
    tol: f64,
    opts: &IntegrationOptions,
) -> Result<(f64, f64), QuadError>
where
    K: Fn(f64) -> f64 + Sync,
{
    if !(tol >= 1e-14) {
        return Err(QuadError::Tolerance(tol));
    }
    let r = integrate_batch(f, interval.0, interval.1, &SingleKernel(kernel), &[tol], opts)?;
    Ok((r.values[0], r.err_ests[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expand::{SingularFactor, SmoothTerm};

    fn endpoint(site: Site, e: f64, mu: u32) -> SingularFunction {
        SingularFunction::new(vec![], vec![SingularFactor::new(site, e, mu).unwrap()]).unwrap()
    }

    #[test]
    fn constant_function() {
        let (v, e) = integrate_singular(&SingularFunction::one(), |_| 1.0, (-1.0, 1.0), 1e-14).unwrap();
        assert!((v - 2.0).abs() < 1e-15);
        assert!(e <= 1e-14);
    }

    #[test]
    fn inverse_square_root_endpoint() {
        let f = endpoint(Site::RightEndpoint, -0.5, 0);
        let (v, _) = integrate_singular(&f, |_| 1.0, (-1.0, 1.0), 1e-13).unwrap();
        assert!((v - 2.0 * 2f64.sqrt()).abs() < 1e-13, "{v}");
    }

    #[test]
    fn algebraic_log_endpoint() {
        // ∫_0^2 u^{1/2} ln u du = (2/3) 2^{3/2} (ln 2 - 2/3)
        let f = endpoint(Site::RightEndpoint, 0.5, 1);
        let (v, _) = integrate_singular(&f, |_| 1.0, (-1.0, 1.0), 1e-13).unwrap();
        let want = 2.0 / 3.0 * 2f64.powf(1.5) * (2f64.ln() - 2.0 / 3.0);
        assert!((v - want).abs() < 1e-13, "{v} vs {want}");
    }

    #[test]
    fn strong_singularity_with_logs() {
        // ∫_0^2 u^{-0.9} ln^2 u du = 2^{0.1} (ln^2 2/0.1 - 2 ln 2/0.01 + 2/0.001)
        let f = endpoint(Site::LeftEndpoint, -0.9, 2);
        // the half-depth estimate is pessimistic for exponents this close to -1
        let (v, _) = integrate_singular(&f, |_| 1.0, (-1.0, 1.0), 1e-7).unwrap();
        let l = 2f64.ln();
        let want = 2f64.powf(0.1) * (l * l / 0.1 - 2.0 * l / 0.01 + 2.0 / 0.001);
        assert!((v - want).abs() < 1e-12 * want, "{v} vs {want}");
    }

    #[test]
    fn interior_site_and_subinterval() {
        // ∫_{-0.5}^{0.8} |x - 0.3|^{0.25} dx
        let f = SingularFunction::new(vec![], vec![SingularFactor::new(Site::Interior(0.3), 0.25, 0).unwrap()]).unwrap();
        let (v, _) = integrate_singular(&f, |_| 1.0, (-0.5, 0.8), 1e-14).unwrap();
        let want = (0.8f64.powf(1.25) + 0.5f64.powf(1.25)) / 1.25;
        assert!((v - want).abs() < 1e-14, "{v} vs {want}");
    }

    #[test]
    fn linearity() {
        let f = endpoint(Site::RightEndpoint, 0.3, 1).times_smooth(SmoothTerm::Sin);
        let (v1, _) = integrate_singular(&f, |x| x.cos(), (-1.0, 1.0), 1e-14).unwrap();
        let (v2, _) = integrate_singular(&f.clone().scaled(-3.7), |x| x.cos(), (-1.0, 1.0), 1e-14).unwrap();
        assert!((v2 + 3.7 * v1).abs() <= 1e-12 * v2.abs());
    }

    #[test]
    fn rejects_bad_arguments() {
        let f = SingularFunction::one();
        assert!(matches!(integrate_singular(&f, |_| 1.0, (-1.0, 1.0), 1e-16), Err(QuadError::Tolerance(_))));
        assert!(matches!(integrate_singular(&f, |_| 1.0, (-2.0, 1.0), 1e-12), Err(QuadError::Interval { .. })));
    }

    #[test]
    fn reports_no_convergence() {
        let f = endpoint(Site::RightEndpoint, -0.999, 0);
        let opts = IntegrationOptions { max_depth: 20, ..Default::default() };
        match integrate_singular_with(&f, |_| 1.0, (-1.0, 1.0), 1e-14, &opts) {
            Err(QuadError::NoConvergence { value, err_est, .. }) => {
                assert!(value.is_finite() && err_est > 1e-14);
            }
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }

    #[test]
    fn mesh_is_reported() {
        let f = endpoint(Site::RightEndpoint, 0.5, 1);
        let m = graded_mesh(&f, -1.0, 1.0, &IntegrationOptions::default());
        assert_eq!(m.breakpoints[0], -1.0);
        assert_eq!(*m.breakpoints.last().unwrap(), 1.0);
        assert!(m.breakpoints.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(m.panel_order, 24);
    }
}
