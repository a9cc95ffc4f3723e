//! Monodromy of a polynomial map `y -> p(y)` by numerical continuation of
//! the fiber `p(y) = x` around loops in the `x`-plane.

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::covering::{monodromy_report, HurwitzTuple, MonodromyReport};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::signature::{Order, OrderSet};

/// Polynomial with complex coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexPolynomial {
    #[serde(serialize_with = "ser_complex_vec")]
    coeffs: Vec<Complex64>,
}

fn ser_complex_vec<S: serde::Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| [c.re, c.im]))
}

/// Smallest leading coefficient magnitude accepted.
const DEGENERACY_TOLERANCE: f64 = 1e-14;

impl ComplexPolynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.norm() == 0.0) {
            coeffs.pop();
        }
        if coeffs.len() < 3 {
            return Err(Error::usage("polynomial degree must be at least 2"));
        }
        if coeffs.last().expect("nonempty").norm() <= DEGENERACY_TOLERANCE {
            return Err(Error::usage("leading coefficient is degenerate"));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::usage("coefficients must be finite"));
        }
        Ok(ComplexPolynomial { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Comma separated coefficients, lowest degree first. Each entry is a
    /// decimal real, or complex as `a+bi`, `a-bi`, `bi`.
    pub fn parse(s: &str) -> Result<Self> {
        let coeffs = s.split(',').map(|t| parse_complex(t.trim())).collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }

    /// Chebyshev polynomial of the first kind, `T_n(cos t) = cos(n t)`.
    pub fn chebyshev(n: usize) -> Result<Self> {
        let mut prev = vec![1.0];
        let mut cur = vec![0.0, 1.0];
        if n == 0 {
            return Self::from_real(&prev);
        }
        for _ in 1..n {
            let mut next = vec![0.0; cur.len() + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] += 2.0 * c;
            }
            for (i, c) in prev.iter().enumerate() {
                next[i] -= c;
            }
            prev = cur;
            cur = next;
        }
        Self::from_real(&cur)
    }

    /// `y^k`.
    pub fn monomial(k: usize) -> Result<Self> {
        let mut c = vec![0.0; k + 1];
        c[k] = 1.0;
        Self::from_real(&c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval(&self, y: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * y + c)
    }

    /// Value and derivative by Horner's scheme.
    pub fn eval_with_derivative(&self, y: Complex64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let mut p = zero;
        let mut dp = zero;
        for &c in self.coeffs.iter().rev() {
            dp = dp * y + p;
            p = p * y + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Vec<Complex64> {
        self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as f64).collect()
    }

    /// `p(y) - x`.
    pub fn shifted(&self, x: Complex64) -> ComplexPolynomial {
        let mut c = self.coeffs.clone();
        c[0] -= x;
        ComplexPolynomial { coeffs: c }
    }

    pub fn roots(&self) -> Result<Vec<Complex64>> {
        roots_of(&self.coeffs)
    }
}

impl fmt::Display for ComplexPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| format_complex(*c)).collect();
        write!(f, "{}", parts.join(","))
    }
}

pub fn format_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else if c.im < 0.0 {
        format!("{}-{}i", c.re, -c.im)
    } else {
        format!("{}+{}i", c.re, c.im)
    }
}

fn parse_complex(t: &str) -> Result<Complex64> {
    let bad = || Error::usage(format!("cannot parse coefficient {t:?}"));
    let num = |s: &str| -> Result<f64> { s.parse::<f64>().map_err(|_| bad()) };
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(num(t)?, 0.0));
    };
    // split at the last sign that is not an exponent sign or the leading one
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (num(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => num(s)?,
    };
    Ok(Complex64::new(re, im))
}

/// Backward error of `z` as a root: `|p(z)| / sum |c_i| |z|^i`.
fn relative_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let p = coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let r = z.norm();
    let scale = coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm());
    if scale == 0.0 { 0.0 } else { p.norm() / scale }
}

/// Relative residual required of every computed root.
pub const ROOT_RESIDUAL: f64 = 1e-10;

/// Simultaneous Aberth iteration. Exact zero roots are split off first.
pub fn roots_of(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let zero = Complex64::new(0.0, 0.0);
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    let zeros = c.iter().take_while(|x| x.norm() == 0.0).count();
    let c: Vec<Complex64> = c[zeros..].to_vec();
    let mut out = vec![zero; zeros];
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Ok(out);
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    if n == 1 {
        out.push(-monic[0]);
        return Ok(out);
    }
    // geometric mean of the root moduli
    let radius = monic[0].norm().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.4))
        .collect();
    let eval = |y: Complex64| -> (Complex64, Complex64) {
        let mut p = zero;
        let mut dp = zero;
        for &a in monic.iter().rev() {
            dp = dp * y + p;
            p = p * y + a;
        }
        (p, dp)
    };
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.re.is_finite() && w.im.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    let worst = z.iter().map(|&r| relative_residual(&monic, r)).fold(0.0, f64::max);
    if worst > ROOT_RESIDUAL {
        return Err(Error::numeric(format!("root finder did not converge (relative residual {worst:.3e})")));
    }
    out.extend(z);
    Ok(out)
}

/// Tolerances for critical value clustering and path tracking.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrackConfig {
    /// Relative distance below which critical values are merged.
    pub tau_cluster: f64,
    /// Newton stopping tolerance on `|p(y) - x|`, relative to the scale of `p`.
    pub corrector_residual: f64,
    /// Smallest allowed distance between tracked roots.
    pub collision_tolerance: f64,
    /// Largest step along a path piece, as a fraction of its parameter range.
    pub max_step: f64,
    pub min_step: f64,
    pub max_newton: usize,
    /// Base point angle; chosen automatically when `None`.
    pub base_angle: Option<f64>,
}

impl Default for TrackConfig {
    fn default() -> Self {
        TrackConfig {
            tau_cluster: 1e-7,
            corrector_residual: 1e-12,
            collision_tolerance: 1e-6,
            max_step: 0.02,
            min_step: 1e-9,
            max_newton: 12,
            base_angle: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalValue {
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    /// Number of critical points, with multiplicity, mapping here.
    pub multiplicity: usize,
}

fn ser_complex<S: serde::Serializer>(c: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [c.re, c.im].serialize(s)
}

/// Images of the roots of `p'`, merged within `tau_cluster` relative distance.
pub fn critical_values(p: &ComplexPolynomial, tau_cluster: f64) -> Result<Vec<CriticalValue>> {
    let points = roots_of(&p.derivative())?;
    let mut out: Vec<CriticalValue> = Vec::new();
    for c in points {
        let v = p.eval(c);
        match out.iter_mut().find(|cv| (cv.value - v).norm() <= tau_cluster * cv.value.norm().max(1.0)) {
            Some(cv) => cv.multiplicity += 1,
            None => out.push(CriticalValue { value: v, multiplicity: 1 }),
        }
    }
    Ok(out)
}

/// A piece of a loop in the `x`-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PathPiece {
    Segment { from: Complex64, to: Complex64 },
    /// Counterclockwise for positive `sweep`.
    Arc { center: Complex64, radius: f64, start: f64, sweep: f64 },
}

impl PathPiece {
    pub fn point(&self, t: f64) -> Complex64 {
        match *self {
            PathPiece::Segment { from, to } => from + (to - from) * t,
            PathPiece::Arc { center, radius, start, sweep } => center + Complex64::from_polar(radius, start + sweep * t),
        }
    }
}

/// Standard loop around `c` from `base`: straight in to distance `rho`, once
/// around counterclockwise, straight back.
pub fn standard_loop(base: Complex64, c: Complex64, rho: f64) -> Vec<PathPiece> {
    let dir = (base - c) / (base - c).norm();
    let entry = c + dir * rho;
    vec![
        PathPiece::Segment { from: base, to: entry },
        PathPiece::Arc { center: c, radius: rho, start: dir.arg(), sweep: TAU },
        PathPiece::Segment { from: entry, to: base },
    ]
}

fn scale_of(p: &ComplexPolynomial, y: Complex64) -> f64 {
    let r = y.norm();
    p.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm()).max(1.0)
}

fn min_separation(ys: &[Complex64]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..ys.len() {
        for j in i + 1..ys.len() {
            m = m.min((ys[i] - ys[j]).norm());
        }
    }
    m
}

/// Newton on `p(y) = x` from `y`; `None` if it does not settle.
fn correct(p: &ComplexPolynomial, x: Complex64, mut y: Complex64, cfg: &TrackConfig) -> Option<Complex64> {
    for _ in 0..cfg.max_newton {
        let (v, dv) = p.eval_with_derivative(y);
        let r = v - x;
        if r.norm() <= cfg.corrector_residual * scale_of(p, y) {
            return Some(y);
        }
        if dv.norm() == 0.0 {
            return None;
        }
        y -= r / dv;
    }
    let r = (p.eval(y) - x).norm();
    (r <= cfg.corrector_residual * scale_of(p, y)).then_some(y)
}

/// Continues all roots along one path piece, halving the step whenever the
/// corrector fails, roots come too close, or a root would jump to a
/// neighbour's track.
fn track_piece(p: &ComplexPolynomial, ys: &mut [Complex64], piece: &PathPiece, cfg: &TrackConfig) -> Result<()> {
    let mut t = 0.0;
    let mut h = cfg.max_step;
    while t < 1.0 {
        let t1 = (t + h).min(1.0);
        let x0 = piece.point(t);
        let x1 = piece.point(t1);
        let dx = x1 - x0;
        let sep = min_separation(ys);
        let mut next = Vec::with_capacity(ys.len());
        let mut ok = true;
        for &y in ys.iter() {
            let (_, dp) = p.eval_with_derivative(y);
            let pred = y + dx / dp;
            match correct(p, x1, pred, cfg) {
                // stay well inside the basin of this track
                Some(z) if (z - y).norm() < 0.3 * sep && (z - pred).norm() < 0.1 * sep => next.push(z),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && min_separation(&next) <= cfg.collision_tolerance {
            ok = false;
        }
        if ok {
            ys.copy_from_slice(&next);
            t = t1;
            h = (h * 1.5).min(cfg.max_step);
        } else {
            h *= 0.5;
            if h < cfg.min_step {
                return Err(Error::numeric(format!(
                    "path tracking stalled at x = {} (root separation {sep:.3e})",
                    format_complex(x0)
                )));
            }
        }
    }
    Ok(())
}

/// Matching permutation of a loop: the root starting at `fiber[i]` ends at
/// `fiber[sigma(i)]`.
pub fn track_loop(p: &ComplexPolynomial, fiber: &[Complex64], path: &[PathPiece], cfg: &TrackConfig) -> Result<Permutation> {
    let mut ys = fiber.to_vec();
    for piece in path {
        track_piece(p, &mut ys, piece, cfg)?;
    }
    let sep = min_separation(fiber);
    let mut images = Vec::with_capacity(fiber.len());
    for y in &ys {
        let (j, d) = fiber
            .iter()
            .enumerate()
            .map(|(j, f)| (j, (y - f).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty fiber");
        if d > 0.25 * sep.min(1.0) {
            return Err(Error::numeric(format!("loop end does not match the fiber (distance {d:.3e})")));
        }
        images.push(j as u32);
    }
    Permutation::from_images(images).map_err(|_| Error::numeric("loop end matches two roots to one fiber point"))
}

#[derive(Clone, Debug, Serialize)]
pub struct MonodromyResult {
    #[serde(serialize_with = "ser_complex")]
    pub base_point: Complex64,
    #[serde(serialize_with = "ser_complex_vec")]
    pub fiber: Vec<Complex64>,
    /// Critical values in loop order.
    pub critical_values: Vec<CriticalValue>,
    /// One permutation per critical value, in loop order.
    pub permutations: Vec<Permutation>,
    pub infinity: Permutation,
    /// Orders of the permutations, the one at infinity last.
    pub realized_orders: Vec<u64>,
    /// The realized orders greater than 1, as an order set.
    pub signature: Option<OrderSet>,
    pub report: MonodromyReport,
}

fn point_segment_distance(q: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let t = ((q - a) * ab.conj()).re / ab.norm_sqr();
    (q - (a + ab * t.clamp(0.0, 1.0))).norm()
}

/// Smallest distance from a critical value to another value's spoke.
fn clearance(base: Complex64, cvs: &[Complex64]) -> f64 {
    let mut m = f64::INFINITY;
    for (i, &c) in cvs.iter().enumerate() {
        for (j, &q) in cvs.iter().enumerate() {
            if i != j {
                m = m.min(point_segment_distance(q, base, c));
            }
        }
    }
    m
}

/// Monodromy around each critical value of `p`, from a base point on the
/// circle of radius `2 (1 + max |critical value|)`. Loops are ordered by the
/// argument of the spoke direction so that their product is the large
/// counterclockwise circle, whose inverse is the permutation at infinity.
pub fn monodromy(p: &ComplexPolynomial, cfg: &TrackConfig) -> Result<MonodromyResult> {
    let d = p.degree();
    let cvs = critical_values(p, cfg.tau_cluster)?;
    let values: Vec<Complex64> = cvs.iter().map(|c| c.value).collect();
    let big = 2.0 * (1.0 + values.iter().map(|v| v.norm()).fold(0.0, f64::max));
    let angle = match cfg.base_angle {
        Some(a) => a,
        None => (0..720)
            .map(|k| 0.1 + PI * k as f64 / 360.0)
            .max_by(|a, b| {
                let ca = clearance(Complex64::from_polar(big, *a), &values);
                let cb = clearance(Complex64::from_polar(big, *b), &values);
                ca.total_cmp(&cb).then(b.total_cmp(a))
            })
            .expect("nonempty range"),
    };
    let base = Complex64::from_polar(big, angle);
    let mut rho = 0.25 * (1.0 + values.iter().map(|v| v.norm()).fold(0.0, f64::max));
    if values.len() > 1 {
        rho = rho.min(0.3 * clearance(base, &values));
        for i in 0..values.len() {
            for j in i + 1..values.len() {
                rho = rho.min(0.3 * (values[i] - values[j]).norm());
            }
        }
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    let key = |i: usize| ((values[i] - base) / (-base)).arg();
    order.sort_by(|&a, &b| key(a).total_cmp(&key(b)));

    let fiber = p.shifted(base).roots()?;
    let fiber: Vec<Complex64> = fiber.into_iter().map(|y| correct(p, base, y, cfg).unwrap_or(y)).collect();
    if min_separation(&fiber) <= cfg.collision_tolerance {
        return Err(Error::numeric("base fiber has colliding roots"));
    }
    let mut perms = Vec::with_capacity(order.len());
    for &i in &order {
        let path = standard_loop(base, values[i], rho);
        let s = track_loop(p, &fiber, &path, cfg)
            .map_err(|e| Error::numeric(format!("loop around {}: {e}", format_complex(values[i]))))?;
        perms.push(s);
    }
    let product = perms.iter().fold(Permutation::identity(d), |acc, s| acc.then(s));
    let infinity = product.inverse();

    // independent check: the large circle itself
    let circle = [PathPiece::Arc { center: Complex64::new(0.0, 0.0), radius: big, start: angle, sweep: TAU }];
    let around = track_loop(p, &fiber, &circle, cfg)?;
    if around != product {
        return Err(Error::numeric("product of loops differs from the large circle"));
    }
    if infinity.cycle_type() != vec![d] {
        return Err(Error::numeric(format!("permutation at infinity {infinity} is not a {d}-cycle")));
    }
    let mut sigma = perms.clone();
    sigma.push(infinity.clone());
    let tuple = HurwitzTuple::new(sigma)?;
    let report = monodromy_report(&tuple, None)?;
    let realized_orders = tuple.realized_orders();
    let signature = OrderSet::new(
        realized_orders.iter().filter(|&&o| o > 1).map(|&o| Order::Finite(o as u32)).collect(),
    )
    .ok();
    Ok(MonodromyResult {
        base_point: base,
        fiber,
        critical_values: order.iter().map(|&i| cvs[i].clone()).collect(),
        permutations: perms,
        infinity,
        realized_orders,
        signature,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::SignatureKind;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parse_coefficients() {
        let p = ComplexPolynomial::parse("8, 0, -8, 0, 1").unwrap();
        assert_eq!(p.degree(), 4);
        let q = ComplexPolynomial::parse("1+2i,-i,2.5e-1-3i,i").unwrap();
        assert_eq!(q.coeffs(), &[c(1.0, 2.0), c(0.0, -1.0), c(0.25, -3.0), c(0.0, 1.0)]);
        assert!(ComplexPolynomial::parse("1,2").is_err());
        assert!(ComplexPolynomial::parse("1,x,3").is_err());
        assert_eq!(ComplexPolynomial::parse("1,0,1,0,0").unwrap().degree(), 2);
    }

    #[test]
    fn chebyshev_coefficients() {
        let t4 = ComplexPolynomial::chebyshev(4).unwrap();
        assert_eq!(t4, ComplexPolynomial::from_real(&[1.0, 0.0, -8.0, 0.0, 8.0]).unwrap());
        // T_n(cos t) = cos(n t)
        for n in 2..=8 {
            let t = ComplexPolynomial::chebyshev(n).unwrap();
            for k in 0..10 {
                let th = 0.3 * k as f64;
                assert!((t.eval(c(th.cos(), 0.0)).re - (n as f64 * th).cos()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn roots_have_small_residuals() {
        let p = ComplexPolynomial::parse("1,2,3,4,5,6,7").unwrap();
        let r = p.roots().unwrap();
        assert_eq!(r.len(), 6);
        for z in r {
            assert!(relative_residual(p.coeffs(), z) < 1e-12);
        }
        let r = ComplexPolynomial::from_real(&[0.0, 0.0, -1.0, 0.0, 1.0]).unwrap().roots().unwrap();
        let mut re: Vec<f64> = r.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        for (a, b) in re.iter().zip([-1.0, 0.0, 0.0, 1.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn critical_value_examples() {
        let cv = critical_values(&ComplexPolynomial::monomial(3).unwrap(), 1e-7).unwrap();
        assert_eq!(cv.len(), 1);
        assert!(cv[0].value.norm() < 1e-12);
        assert_eq!(cv[0].multiplicity, 2);

        let cv = critical_values(&ComplexPolynomial::chebyshev(4).unwrap(), 1e-7).unwrap();
        let mut v: Vec<f64> = cv.iter().map(|x| x.value.re).collect();
        v.sort_by(f64::total_cmp);
        assert_eq!(v.len(), 2);
        assert!((v[0] + 1.0).abs() < 1e-12 && (v[1] - 1.0).abs() < 1e-12);

        let cv = critical_values(&ComplexPolynomial::parse("0.5-2i,0,1").unwrap(), 1e-7).unwrap();
        assert_eq!(cv.len(), 1);
        assert!((cv[0].value - c(0.5, -2.0)).norm() < 1e-14);
    }

    #[test]
    fn loops_around_square_root() {
        let p = ComplexPolynomial::monomial(2).unwrap();
        let cfg = TrackConfig::default();
        let base = c(1.5, 0.5);
        let fiber = p.shifted(base).roots().unwrap();
        let s = track_loop(&p, &fiber, &standard_loop(base, c(0.0, 0.0), 0.4), &cfg).unwrap();
        assert_eq!(s.cycle_type(), vec![2]);
        let s = track_loop(&p, &fiber, &standard_loop(base, c(3.0, 2.0), 0.4), &cfg).unwrap();
        assert!(s.is_identity());
    }

    #[test]
    fn t4_over_minus_one() {
        let p = ComplexPolynomial::chebyshev(4).unwrap();
        for step in [0.02, 0.01] {
            let cfg = TrackConfig { max_step: step, ..Default::default() };
            let base = c(0.3, 3.0);
            let fiber = p.shifted(base).roots().unwrap();
            let s = track_loop(&p, &fiber, &standard_loop(base, c(-1.0, 0.0), 0.5), &cfg).unwrap();
            assert_eq!(s.cycle_type(), vec![2, 2]);
        }
    }

    #[test]
    fn monomials_are_cyclic() {
        for k in 2..=6 {
            let r = monodromy(&ComplexPolynomial::monomial(k).unwrap(), &TrackConfig::default()).unwrap();
            assert_eq!(r.signature.unwrap(), OrderSet::finite(&[k as u32, k as u32]).unwrap());
            assert_eq!(r.report.group_order, k as u64);
        }
    }

    #[test]
    fn chebyshev_is_dihedral() {
        for n in 3..=8 {
            let r = monodromy(&ComplexPolynomial::chebyshev(n).unwrap(), &TrackConfig::default()).unwrap();
            assert_eq!(r.signature.unwrap(), OrderSet::finite(&[2, 2, n as u32]).unwrap());
            assert_eq!(r.report.group_order, 2 * n as u64);
            assert!(r.report.solvable && r.report.transitive);
        }
    }

    #[test]
    fn quartic_with_three_critical_values() {
        let r = monodromy(&ComplexPolynomial::parse("0,1,0,0,1").unwrap(), &TrackConfig::default()).unwrap();
        let sig = r.signature.unwrap();
        assert_eq!(sig, OrderSet::finite(&[2, 2, 2, 4]).unwrap());
        assert_eq!(sig.classify().kind, SignatureKind::Hyperbolic);
        assert_eq!(r.report.group_order, 24);
    }

    #[test]
    fn invariant_under_resolution_and_base_point() {
        let p = ComplexPolynomial::chebyshev(5).unwrap();
        let a = monodromy(&p, &TrackConfig::default()).unwrap();
        let b = monodromy(&p, &TrackConfig { max_step: 0.01, ..Default::default() }).unwrap();
        assert_eq!(a.permutations, b.permutations);
        let c = monodromy(&p, &TrackConfig { base_angle: Some(a.base_point.arg() + 0.05), ..Default::default() }).unwrap();
        assert_eq!(a.realized_orders, c.realized_orders);
        assert_eq!(a.report.group_order, c.report.group_order);
    }

    #[test]
    fn product_relation() {
        let p = ComplexPolynomial::parse("0.3+0.1i,-1,0.5i,2,0,1").unwrap();
        let r = monodromy(&p, &TrackConfig::default()).unwrap();
        let prod = r.permutations.iter().chain([&r.infinity]).fold(Permutation::identity(5), |a, s| a.then(s));
        assert!(prod.is_identity());
        assert_eq!(r.infinity.cycle_type(), vec![5]);
        assert!(r.report.transitive);
    }
}
