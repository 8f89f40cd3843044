//! Gauss hypergeometric function for real parameters and complex argument.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::gamma::{is_nonpositive_integer, ln_gamma_signed};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest convergence radius accepted for a power series.
const MAX_RADIUS: f64 = 0.98;
const MAX_TERMS: usize = 200_000;
/// Largest tolerated ratio between the biggest summand and the result.
const MAX_CANCELLATION: f64 = 1e4;
/// `a - b` closer than this to an integer disables the `1/z` continuations.
const DEGENERATE_GAP: f64 = 1e-6;

/// Principal branch of `₂F₁(a, b; c; z)`.
///
/// Uses the Maclaurin series, the Pfaff transformation, or the analytic
/// continuations in `1/z` and `1/(1 - z)`, whichever has the smallest
/// convergence radius. Returns [`Error::NumericFailure`] rather than an
/// inaccurate value when no representation converges well (radius above 0.98,
/// or heavy cancellation). Arguments with `Re z > 1/2` close to `z = 1` are
/// not covered. `c` must not be a non-positive integer, and `z` must not lie on
/// the cut `[1, ∞)`.
pub fn gauss_2f1<T: Real>(a: T, b: T, c: T, z: Complex<T>) -> Result<Complex<T>> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.re.is_finite() && z.im.is_finite())
    {
        return Err(Error::Domain("2F1 arguments must be finite".into()));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Domain(format!("2F1 undefined for c = {c}")));
    }
    if z.is_zero() {
        return Ok(Complex::one());
    }
    if z.im == T::zero() && z.re >= T::one() {
        return Err(Error::Domain(format!("2F1 argument {z} on the branch cut")));
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        // Terminating polynomial.
        return series(a, b, c, z);
    }

    let one = Complex::<T>::one();
    let direct = z.norm();
    let pfaff = (z / (z - one)).norm();
    let d = (a - b).abs();
    let degenerate = (d - d.round()).abs() < T::lit(DEGENERATE_GAP);
    let (inv, inv1m) = if degenerate {
        (T::infinity(), T::infinity())
    } else {
        (z.inv().norm(), (one - z).inv().norm())
    };

    let best = direct.min(pfaff).min(inv).min(inv1m);
    if best > T::lit(MAX_RADIUS) {
        return Err(Error::numeric(
            "2F1",
            format!(
                "no convergent representation for a = {a}, b = {b}, c = {c}, z = {z} \
                 (best radius {best})"
            ),
        ));
    }
    if best == direct {
        series(a, b, c, z)
    } else if best == pfaff {
        pfaff_transform(a, b, c, z)
    } else if best == inv {
        inverse_z(a, b, c, z)
    } else {
        inverse_one_minus_z(a, b, c, z)
    }
}

/// Series or Pfaff, whichever converges faster. Used inside the continuations.
fn near_origin<T: Real>(a: T, b: T, c: T, z: Complex<T>) -> Result<Complex<T>> {
    if z.is_zero() {
        return Ok(Complex::one());
    }
    let pfaff = (z / (z - Complex::one())).norm();
    if z.norm() <= pfaff || is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        series(a, b, c, z)
    } else {
        pfaff_transform(a, b, c, z)
    }
}

// (1 - z)^{-a} ₂F₁(a, c - b; c; z / (z - 1))
fn pfaff_transform<T: Real>(a: T, b: T, c: T, z: Complex<T>) -> Result<Complex<T>> {
    let one = Complex::<T>::one();
    let w = z / (z - one);
    let f = series(a, c - b, c, w)?;
    Ok(f * (-(one - z).ln() * a).exp())
}

/// `ln|Γ(p0)Γ(p1) / (Γ(q0)Γ(q1))|` and its sign, or `None` when a denominator
/// argument is a pole (the ratio vanishes).
fn gamma_ratio<T: Real>(p: [T; 2], q: [T; 2]) -> Result<Option<(T, T)>> {
    if q.iter().any(|&x| is_nonpositive_integer(x)) {
        return Ok(None);
    }
    let mut ln = T::zero();
    let mut sign = T::one();
    for &x in &p {
        let (l, s) = ln_gamma_signed(x)?;
        ln += l;
        sign *= s;
    }
    for &x in &q {
        let (l, s) = ln_gamma_signed(x)?;
        ln -= l;
        sign *= s;
    }
    Ok(Some((ln, sign)))
}

fn combine<T: Real>(
    context: &str,
    terms: [Option<Complex<T>>; 2],
) -> Result<Complex<T>> {
    let mut sum = Complex::zero();
    let mut scale = T::zero();
    for t in terms.into_iter().flatten() {
        if !(t.re.is_finite() && t.im.is_finite()) {
            return Err(Error::numeric(context, "non-finite partial term"));
        }
        sum += t;
        scale += t.norm();
    }
    if scale > T::lit(MAX_CANCELLATION) * sum.norm() {
        return Err(Error::numeric(context, "cancellation between continuation terms"));
    }
    Ok(sum)
}

// A&S 15.3.7
fn inverse_z<T: Real>(a: T, b: T, c: T, z: Complex<T>) -> Result<Complex<T>> {
    let u = z.inv();
    let ln_mz = (-z).ln();
    let one = T::one();
    let mut terms = [None, None];
    if let Some((lc, s)) = gamma_ratio([c, b - a], [b, c - a])? {
        let f = near_origin(a, one - c + a, one - b + a, u)?;
        terms[0] = Some(f * (ln_mz * (-a) + Complex::from(lc)).exp() * s);
    }
    if let Some((lc, s)) = gamma_ratio([c, a - b], [a, c - b])? {
        let f = near_origin(b, one - c + b, one - a + b, u)?;
        terms[1] = Some(f * (ln_mz * (-b) + Complex::from(lc)).exp() * s);
    }
    combine("2F1 continuation in 1/z", terms)
}

// A&S 15.3.8
fn inverse_one_minus_z<T: Real>(a: T, b: T, c: T, z: Complex<T>) -> Result<Complex<T>> {
    let one_c = Complex::<T>::one();
    let u = (one_c - z).inv();
    let ln_1mz = (one_c - z).ln();
    let one = T::one();
    let mut terms = [None, None];
    if let Some((lc, s)) = gamma_ratio([c, b - a], [b, c - a])? {
        let f = near_origin(a, c - b, a - b + one, u)?;
        terms[0] = Some(f * (ln_1mz * (-a) + Complex::from(lc)).exp() * s);
    }
    if let Some((lc, s)) = gamma_ratio([c, a - b], [a, c - b])? {
        let f = near_origin(b, c - a, b - a + one, u)?;
        terms[1] = Some(f * (ln_1mz * (-b) + Complex::from(lc)).exp() * s);
    }
    combine("2F1 continuation in 1/(1-z)", terms)
}

fn series<T: Real>(a: T, b: T, c: T, z: Complex<T>) -> Result<Complex<T>> {
    let eps = T::epsilon();
    let rho = z.norm();
    // Tail bound factor for a geometric remainder with ratio rho.
    let tail = if rho < T::one() {
        T::one() / (T::one() - rho.min(T::lit(0.999)))
    } else {
        T::one()
    };
    // Summands may grow until n exceeds the parameter magnitudes.
    let warmup = (a.abs() + b.abs() + c.abs()).to_f64_lossy().min(1e6) as usize + 2;

    let mut term = Complex::<T>::one();
    let mut sum = term;
    let mut largest = T::one();
    for n in 0..MAX_TERMS {
        let nf = T::from_usize_lossy(n);
        term = term * z * ((a + nf) * (b + nf) / ((c + nf) * (nf + T::one())));
        sum += term;
        let size = term.norm();
        if size > largest {
            largest = size;
        }
        if !size.is_finite() {
            return Err(Error::numeric("2F1 series", format!("overflow at z = {z}")));
        }
        if size == T::zero() || (n > warmup && size * tail <= eps * sum.norm()) {
            if largest > T::lit(MAX_CANCELLATION) * sum.norm() {
                return Err(Error::numeric(
                    "2F1 series",
                    format!("cancellation (largest term {largest}, sum {})", sum.norm()),
                ));
            }
            return Ok(sum);
        }
    }
    Err(Error::numeric(
        "2F1 series",
        format!("no convergence in {MAX_TERMS} terms for a = {a}, b = {b}, c = {c}, z = {z}"),
    ))
}
