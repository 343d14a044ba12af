//! Symbolic description of `f(x) = g(x) · Π |x - x_i|^{γ_i} ln^{μ_i}|x - x_i|` on [-1, 1].

use std::fmt;
use std::sync::Arc;

use super::ExpandError;

/// Location of a singular factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Site {
    /// `x = 1`, distance `1 - x`.
    RightEndpoint,
    /// `x = -1`, distance `1 + x`.
    LeftEndpoint,
    /// `x = z0` with `-1 < z0 < 1`, distance `|x - z0|`.
    Interior(f64),
}

impl Site {
    pub fn position(&self) -> f64 {
        match *self {
            Site::RightEndpoint => 1.0,
            Site::LeftEndpoint => -1.0,
            Site::Interior(z) => z,
        }
    }

    fn order_key(&self) -> (u8, f64) {
        match *self {
            Site::RightEndpoint => (0, 0.0),
            Site::LeftEndpoint => (1, 0.0),
            Site::Interior(z) => (2, z),
        }
    }

    fn same(&self, other: &Site) -> bool {
        self.order_key() == other.order_key()
    }
}

/// `dist^exponent · ln^log_power(dist)` at one site.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularFactor {
    pub site: Site,
    pub exponent: f64,
    pub log_power: u32,
}

impl SingularFactor {
    pub fn new(site: Site, exponent: f64, log_power: u32) -> Result<Self, ExpandError> {
        let f = Self { site, exponent, log_power };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<(), ExpandError> {
        if !self.exponent.is_finite() {
            return Err(ExpandError::InvalidFunction(format!(
                "non-finite exponent {}",
                self.exponent
            )));
        }
        match self.site {
            Site::Interior(z) => {
                if !(z > -1.0 && z < 1.0) {
                    return Err(ExpandError::InvalidFunction(format!(
                        "interior site {z} must satisfy -1 < z0 < 1"
                    )));
                }
                if !(self.exponent > -0.5) {
                    return Err(ExpandError::InvalidFunction(format!(
                        "interior exponent {} must exceed -1/2",
                        self.exponent
                    )));
                }
            }
            _ => {
                if !(self.exponent > -1.0) {
                    return Err(ExpandError::InvalidFunction(format!(
                        "endpoint exponent {} must exceed -1",
                        self.exponent
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    fn eval(&self, d: f64) -> f64 {
        let mut v = if self.exponent == 0.0 { 1.0 } else { d.powf(self.exponent) };
        if self.log_power > 0 {
            v *= d.ln().powi(self.log_power as i32);
        }
        v
    }
}

/// One multiplicative piece of the smooth cofactor `g`.
#[derive(Clone)]
pub enum SmoothTerm {
    Sin,
    Cos,
    Exp,
    /// Coefficients, constant first.
    Poly(Vec<f64>),
    /// Caller-supplied smooth function with a display name.
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>, String),
}

impl SmoothTerm {
    pub fn custom<F>(name: &str, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        SmoothTerm::Custom(Arc::new(f), name.to_string())
    }

    #[inline]
    fn eval(&self, x: f64) -> f64 {
        match self {
            SmoothTerm::Sin => x.sin(),
            SmoothTerm::Cos => x.cos(),
            SmoothTerm::Exp => x.exp(),
            SmoothTerm::Poly(c) => c.iter().rev().fold(0.0, |acc, &ci| acc * x + ci),
            SmoothTerm::Custom(f, _) => f(x),
        }
    }
}

impl PartialEq for SmoothTerm {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (SmoothTerm::Sin, SmoothTerm::Sin)
            | (SmoothTerm::Cos, SmoothTerm::Cos)
            | (SmoothTerm::Exp, SmoothTerm::Exp) => true,
            (SmoothTerm::Poly(a), SmoothTerm::Poly(b)) => a == b,
            (SmoothTerm::Custom(a, _), SmoothTerm::Custom(b, _)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

impl fmt::Debug for SmoothTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SmoothTerm::Sin => write!(f, "Sin"),
            SmoothTerm::Cos => write!(f, "Cos"),
            SmoothTerm::Exp => write!(f, "Exp"),
            SmoothTerm::Poly(c) => write!(f, "Poly({c:?})"),
            SmoothTerm::Custom(_, name) => write!(f, "Custom({name})"),
        }
    }
}

/// A point of [-1, 1] together with an exact offset from a reference site.
///
/// Quadrature nodes deep inside a geometric mesh sit at distances far below
/// machine epsilon from their site; `offset` keeps that distance exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub anchor: f64,
    pub offset: f64,
}

impl Point {
    pub fn plain(x: f64) -> Self {
        Self { x, anchor: x, offset: 0.0 }
    }

    pub fn anchored(anchor: f64, offset: f64) -> Self {
        Self { x: anchor + offset, anchor, offset }
    }

    #[inline]
    pub fn dist_right(&self) -> f64 {
        if self.anchor == 1.0 {
            -self.offset
        } else {
            1.0 - self.x
        }
    }

    #[inline]
    pub fn dist_left(&self) -> f64 {
        if self.anchor == -1.0 {
            self.offset
        } else {
            1.0 + self.x
        }
    }

    #[inline]
    pub fn dist_to(&self, z: f64) -> f64 {
        if self.anchor == z {
            self.offset.abs()
        } else {
            (self.x - z).abs()
        }
    }

    #[inline]
    fn dist(&self, site: &Site) -> f64 {
        match *site {
            Site::RightEndpoint => self.dist_right(),
            Site::LeftEndpoint => self.dist_left(),
            Site::Interior(z) => self.dist_to(z),
        }
    }
}

/// `f(x) = g(x) · Π factors · ln^μ(1 - x^2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularFunction {
    smooth: Vec<SmoothTerm>,
    factors: Vec<SingularFactor>,
    log_one_minus_x2: u32,
    scale: f64,
}

impl Default for SingularFunction {
    fn default() -> Self {
        Self::one()
    }
}

impl SingularFunction {
    /// The constant function 1.
    pub fn one() -> Self {
        Self { smooth: Vec::new(), factors: Vec::new(), log_one_minus_x2: 0, scale: 1.0 }
    }

    /// A purely smooth function.
    pub fn smooth(term: SmoothTerm) -> Self {
        Self::one().times_smooth(term)
    }

    /// Builds a function, merging factors that share a site.
    pub fn new(
        smooth: Vec<SmoothTerm>,
        factors: Vec<SingularFactor>,
    ) -> Result<Self, ExpandError> {
        let mut f = Self::one();
        for t in smooth {
            f = f.times_smooth(t);
        }
        for fac in factors {
            f = f.times_factor(fac)?;
        }
        Ok(f)
    }

    pub fn times_smooth(mut self, term: SmoothTerm) -> Self {
        self.smooth.push(term);
        self
    }

    /// Multiplies by a singular factor; exponents and log powers add at a shared site.
    pub fn times_factor(mut self, fac: SingularFactor) -> Result<Self, ExpandError> {
        if let Some(existing) = self.factors.iter_mut().find(|g| g.site.same(&fac.site)) {
            existing.exponent += fac.exponent;
            existing.log_power += fac.log_power;
            existing.validate()?;
        } else {
            fac.validate()?;
            self.factors.push(fac);
            self.factors.sort_by(|a, b| {
                a.site.order_key().partial_cmp(&b.site.order_key()).expect("finite sites")
            });
        }
        Ok(self)
    }

    /// Multiplies by `ln^μ(1 - x^2)`.
    pub fn times_log_one_minus_x2(mut self, mu: u32) -> Self {
        self.log_one_minus_x2 += mu;
        self
    }

    /// Multiplies by a constant.
    pub fn scaled(mut self, c: f64) -> Self {
        self.scale *= c;
        self
    }

    pub fn smooth_terms(&self) -> &[SmoothTerm] {
        &self.smooth
    }

    pub fn factors(&self) -> &[SingularFactor] {
        &self.factors
    }

    pub fn log_one_minus_x2(&self) -> u32 {
        self.log_one_minus_x2
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// The factor at `site`, if any.
    pub fn factor_at(&self, site: Site) -> Option<&SingularFactor> {
        self.factors.iter().find(|g| g.site.same(&site))
    }

    /// True when `f` has no singular structure at all.
    pub fn is_smooth(&self) -> bool {
        self.log_one_minus_x2 == 0
            && self.factors.iter().all(|g| {
                let int = g.exponent >= 0.0 && g.exponent.fract() == 0.0;
                match g.site {
                    Site::Interior(_) => g.log_power == 0 && int && g.exponent % 2.0 == 0.0,
                    _ => g.log_power == 0 && int,
                }
            })
    }

    /// Effective exponent and log power at `site`, for mesh grading.
    pub(crate) fn local_behaviour(&self, site: Site) -> Option<(f64, u32)> {
        let fac = self.factor_at(site);
        let extra_log = match site {
            Site::RightEndpoint | Site::LeftEndpoint => self.log_one_minus_x2,
            Site::Interior(_) => 0,
        };
        match fac {
            Some(g) => Some((g.exponent, g.log_power + extra_log)),
            None if extra_log > 0 => Some((0.0, extra_log)),
            None => None,
        }
    }

    /// Sites where the integrand is singular, for mesh grading.
    pub(crate) fn sites(&self) -> Vec<Site> {
        let mut s: Vec<Site> = self.factors.iter().map(|g| g.site).collect();
        if self.log_one_minus_x2 > 0 {
            for e in [Site::RightEndpoint, Site::LeftEndpoint] {
                if !s.iter().any(|t| t.same(&e)) {
                    s.push(e);
                }
            }
        }
        s
    }

    /// Multiplies by the Jacobi weight `(1-x)^α (1+x)^β`.
    pub(crate) fn with_weight(&self, alpha: f64, beta: f64) -> Self {
        let mut out = self.clone();
        for (site, e) in [(Site::RightEndpoint, alpha), (Site::LeftEndpoint, beta)] {
            if e == 0.0 {
                continue;
            }
            if let Some(g) = out.factors.iter_mut().find(|g| g.site.same(&site)) {
                g.exponent += e;
            } else {
                out.factors.push(SingularFactor { site, exponent: e, log_power: 0 });
            }
        }
        out.factors.sort_by(|a, b| {
            a.site.order_key().partial_cmp(&b.site.order_key()).expect("finite sites")
        });
        out
    }

    /// `f` at a plain coordinate.
    pub fn eval(&self, x: f64) -> f64 {
        self.eval_at(&Point::plain(x))
    }

    /// `f` at an anchored point.
    #[inline]
    pub fn eval_at(&self, p: &Point) -> f64 {
        let mut v = self.scale;
        for t in &self.smooth {
            v *= t.eval(p.x);
        }
        for g in &self.factors {
            v *= g.eval(p.dist(&g.site));
        }
        if self.log_one_minus_x2 > 0 {
            let l = if p.x.abs() < 0.5 { (-p.x * p.x).ln_1p() } else { p.dist_right().ln() + p.dist_left().ln() };
            v *= l.powi(self.log_one_minus_x2 as i32);
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_factors_at_shared_site() {
        let f = SingularFunction::one()
            .times_factor(SingularFactor::new(Site::RightEndpoint, 0.5, 0).unwrap())
            .unwrap()
            .times_factor(SingularFactor::new(Site::RightEndpoint, 0.0, 1).unwrap())
            .unwrap();
        assert_eq!(f.factors().len(), 1);
        assert_eq!(f.factors()[0], SingularFactor { site: Site::RightEndpoint, exponent: 0.5, log_power: 1 });
    }

    #[test]
    fn evaluation_matches_closed_form() {
        let f = SingularFunction::new(
            vec![SmoothTerm::Cos],
            vec![SingularFactor::new(Site::Interior(0.5), 3.0, 1).unwrap()],
        )
        .unwrap();
        let x = -0.3f64;
        let d = (x - 0.5).abs();
        let want = d.powi(3) * d.ln() * x.cos();
        assert!((f.eval(x) - want).abs() <= 1e-15 * want.abs());
    }

    #[test]
    fn anchored_distance_is_exact() {
        let f = SingularFunction::new(
            vec![],
            vec![SingularFactor::new(Site::RightEndpoint, 0.5, 1).unwrap()],
        )
        .unwrap();
        let p = Point::anchored(1.0, -1e-200);
        let want = 1e-100 * (1e-200f64).ln();
        assert!((f.eval_at(&p) - want).abs() <= 1e-14 * want.abs());
    }

    #[test]
    fn rejects_invalid_factors() {
        assert!(SingularFactor::new(Site::RightEndpoint, -1.0, 0).is_err());
        assert!(SingularFactor::new(Site::Interior(0.2), -0.5, 0).is_err());
        assert!(SingularFactor::new(Site::Interior(1.0), 0.5, 0).is_err());
    }

    #[test]
    fn weight_fuses_with_existing_factor() {
        let f = SingularFunction::new(
            vec![],
            vec![SingularFactor::new(Site::RightEndpoint, 0.5, 1).unwrap()],
        )
        .unwrap();
        let w = f.with_weight(1.0, 2.0);
        assert_eq!(w.factor_at(Site::RightEndpoint).unwrap().exponent, 1.5);
        assert_eq!(w.factor_at(Site::LeftEndpoint).unwrap().exponent, 2.0);
        let x = 0.25f64;
        let want = f.eval(x) * (1.0 - x) * (1.0 + x).powi(2);
        assert!((w.eval(x) - want).abs() <= 1e-15 * want.abs());
    }

    #[test]
    fn log_one_minus_x2_product_form() {
        let f = SingularFunction::one().times_log_one_minus_x2(2);
        let x = 0.6f64;
        let want = (1.0 - x * x).ln().powi(2);
        assert!((f.eval(x) - want).abs() <= 1e-14 * want.abs());
    }
}
