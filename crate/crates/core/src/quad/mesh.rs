//! Geometric meshes graded toward singular points.
//!
//! Panels store their ends as offsets from an anchor so that panels deep in a
//! grading sequence keep exact distances to the singular point.

use std::f64::consts::PI;

use crate::expand::Point;

/// Which of the two nested meshes (full depth, half depth) a panel belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum PanelTag {
    Shared,
    FineOnly,
    CoarseOnly,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Panel {
    pub anchor: f64,
    pub lo: f64,
    pub hi: f64,
    pub tag: PanelTag,
}

impl Panel {
    fn plain(a: f64, b: f64) -> Self {
        Self { anchor: a, lo: 0.0, hi: b - a, tag: PanelTag::Shared }
    }

    pub fn x_lo(&self) -> f64 {
        self.anchor + self.lo
    }

    pub fn x_hi(&self) -> f64 {
        self.anchor + self.hi
    }

    /// Maps a reference node `t ∈ [-1, 1]` to an anchored point and its Jacobian.
    #[inline]
    pub fn map(&self, t: f64) -> (Point, f64) {
        let half = 0.5 * (self.hi - self.lo);
        let mid = 0.5 * (self.hi + self.lo);
        (Point::anchored(self.anchor, mid + half * t), half)
    }
}

/// Singular point with its grading depth (number of geometric levels of the
/// coarse mesh; the fine mesh uses twice as many).
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct GradedSite {
    pub position: f64,
    pub half_depth: usize,
}

/// A graded composite mesh on `[a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedMesh {
    pub breakpoints: Vec<f64>,
    pub grading_ratio: f64,
    pub panels_per_singularity: usize,
    pub panel_order: usize,
}

/// Smallest half depth `h` with `(L r^h)^{1+e} (1 + |ln(L r^h)|)^μ <= target`,
/// clamped to `[2, max_half]`.
pub(crate) fn half_depth(
    exponent: f64,
    log_power: u32,
    length: f64,
    ratio: f64,
    target: f64,
    max_half: usize,
) -> usize {
    let p = 1.0 + exponent;
    let mut h = 2usize;
    while h < max_half {
        let delta = length * ratio.powi(h as i32);
        let ln_v = p * delta.ln() + log_power as f64 * (1.0 + delta.ln().abs()).ln();
        if ln_v <= target.ln() {
            break;
        }
        h += 1;
    }
    h.min(max_half)
}

fn graded_panels(
    out: &mut Vec<Panel>,
    site: f64,
    length: f64,
    dir: f64,
    half_depth: usize,
    ratio: f64,
) {
    let d = 2 * half_depth;
    let mut tmp = Vec::with_capacity(d + 2);
    let mut outer = length;
    for j in 0..d {
        let inner = outer * ratio;
        let tag = if j < half_depth { PanelTag::Shared } else { PanelTag::FineOnly };
        tmp.push(oriented(site, inner, outer, dir, tag));
        if j + 1 == half_depth {
            tmp.push(oriented(site, 0.0, inner, dir, PanelTag::CoarseOnly));
        }
        outer = inner;
    }
    tmp.push(oriented(site, 0.0, outer, dir, PanelTag::FineOnly));
    if dir < 0.0 {
        // ascending x: the innermost panels come last when grading leftward
        out.extend(tmp);
    } else {
        out.extend(tmp.into_iter().rev());
    }
}

fn oriented(site: f64, inner: f64, outer: f64, dir: f64, tag: PanelTag) -> Panel {
    if dir > 0.0 {
        Panel { anchor: site, lo: inner, hi: outer, tag }
    } else {
        Panel { anchor: site, lo: -outer, hi: -inner, tag }
    }
}

/// Panels covering `[a, b]`, graded toward every listed site and ordered by
/// ascending left end (within each tag class).
pub(crate) fn build_panels(a: f64, b: f64, sites: &[GradedSite], ratio: f64) -> Vec<Panel> {
    let mut cuts = vec![a, b];
    for s in sites {
        if s.position > a && s.position < b {
            cuts.push(s.position);
        }
    }
    cuts.sort_by(|x, y| x.partial_cmp(y).expect("finite breakpoints"));
    cuts.dedup();
    let depth_at = |x: f64| sites.iter().find(|s| s.position == x).map(|s| s.half_depth);
    let mut out = Vec::new();
    for w in cuts.windows(2) {
        let (l, r) = (w[0], w[1]);
        match (depth_at(l), depth_at(r)) {
            (None, None) => out.push(Panel::plain(l, r)),
            (Some(h), None) => graded_panels(&mut out, l, r - l, 1.0, h, ratio),
            (None, Some(h)) => graded_panels(&mut out, r, r - l, -1.0, h, ratio),
            (Some(hl), Some(hr)) => {
                let m = 0.5 * (l + r);
                graded_panels(&mut out, l, m - l, 1.0, hl, ratio);
                graded_panels(&mut out, r, r - m, -1.0, hr, ratio);
            }
        }
    }
    out
}

fn theta_of(anchor: f64, off: f64) -> f64 {
    if anchor == 1.0 {
        2.0 * (0.5 * (-off).max(0.0)).sqrt().min(1.0).asin()
    } else if anchor == -1.0 {
        PI - 2.0 * (0.5 * off.max(0.0)).sqrt().min(1.0).asin()
    } else {
        (anchor + off).clamp(-1.0, 1.0).acos()
    }
}

fn offset_of(anchor: f64, theta: f64) -> f64 {
    if anchor == 1.0 {
        -2.0 * (0.5 * theta).sin().powi(2)
    } else if anchor == -1.0 {
        2.0 * (0.5 * (PI - theta)).sin().powi(2)
    } else {
        theta.cos() - anchor
    }
}

/// Splits panels uniformly in `θ = arccos x` until each spans at most `max_span`.
pub(crate) fn refine_theta(panels: Vec<Panel>, max_span: f64) -> Vec<Panel> {
    let mut out = Vec::with_capacity(panels.len());
    for p in panels {
        let t_lo = theta_of(p.anchor, p.lo);
        let t_hi = theta_of(p.anchor, p.hi);
        let span = (t_lo - t_hi).abs();
        let k = (span / max_span).ceil() as usize;
        if k <= 1 {
            out.push(p);
            continue;
        }
        let mut prev = p.lo;
        for i in 1..=k {
            let next = if i == k {
                p.hi
            } else {
                offset_of(p.anchor, t_lo + (t_hi - t_lo) * i as f64 / k as f64)
            };
            out.push(Panel { anchor: p.anchor, lo: prev, hi: next, tag: p.tag });
            prev = next;
        }
    }
    out
}

impl GradedMesh {
    pub(crate) fn from_panels(
        panels: &[Panel],
        ratio: f64,
        per_site: usize,
        order: usize,
    ) -> Self {
        let mut breakpoints: Vec<f64> = panels
            .iter()
            .filter(|p| p.tag != PanelTag::CoarseOnly)
            .flat_map(|p| [p.x_lo(), p.x_hi()])
            .collect();
        breakpoints.sort_by(|x, y| x.partial_cmp(y).expect("finite breakpoints"));
        breakpoints.dedup();
        Self { breakpoints, grading_ratio: ratio, panels_per_singularity: per_site, panel_order: order }
    }
}
