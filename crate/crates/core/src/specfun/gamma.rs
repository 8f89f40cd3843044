use crate::error::{Error, Result};
use crate::scalar::Real;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Lanczos sum for x >= 0.5.
fn ln_gamma_lanczos<T: Real>(x: T) -> T {
    let xm1 = x - T::one();
    let mut acc = T::lit(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += T::lit(c) / (xm1 + T::from_usize_lossy(i));
    }
    let t = xm1 + T::lit(LANCZOS_G + 0.5);
    T::lit(0.5) * T::two_pi().ln() + (xm1 + T::lit(0.5)) * t.ln() - t + acc.ln()
}

/// Natural logarithm of the complete gamma function for `x > 0`.
pub fn ln_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    if x < T::lit(0.5) {
        // Γ(x) = Γ(x + 1) / x keeps the Lanczos sum in its accurate range.
        return Ok(ln_gamma_lanczos(x + T::one()) - x.ln());
    }
    Ok(ln_gamma_lanczos(x))
}

pub(crate) fn is_nonpositive_integer<T: Real>(x: T) -> bool {
    x <= T::zero() && x == x.round()
}

/// `(ln|Γ(x)|, sign Γ(x))` for any real `x` that is not a pole.
pub(crate) fn ln_gamma_signed<T: Real>(x: T) -> Result<(T, T)> {
    if is_nonpositive_integer(x) {
        return Err(Error::Domain(format!("gamma pole at {x}")));
    }
    if x > T::zero() {
        return Ok((ln_gamma(x)?, T::one()));
    }
    // Reflection: Γ(x) Γ(1 - x) = π / sin(πx).
    let s = (T::PI() * (x - x.floor())).sin();
    let sign_parity = if (x.floor().to_f64_lossy() as i64).rem_euclid(2) == 0 {
        T::one()
    } else {
        -T::one()
    };
    let sin_pix = s * sign_parity;
    let lg = T::PI().ln() - sin_pix.abs().ln() - ln_gamma(T::one() - x)?;
    Ok((lg, sin_pix.signum()))
}

/// Regularized upper incomplete gamma `Q(a, x) = Γ(a, x) / Γ(a)`.
pub fn upper_incomplete_gamma_regularized<T: Real>(a: T, x: T) -> Result<T> {
    if !(a > T::zero()) || !a.is_finite() {
        return Err(Error::Domain(format!("incomplete gamma requires a > 0, got {a}")));
    }
    if !(x >= T::zero()) {
        return Err(Error::Domain(format!("incomplete gamma requires x >= 0, got {x}")));
    }
    if x == T::zero() {
        return Ok(T::one());
    }
    if x.is_infinite() {
        return Ok(T::zero());
    }
    if x < a + T::one() {
        Ok(T::one() - lower_series(a, x)?)
    } else {
        upper_continued_fraction(a, x)
    }
}

/// Regularized lower incomplete gamma `P(a, x) = 1 - Q(a, x)`.
pub fn lower_incomplete_gamma_regularized<T: Real>(a: T, x: T) -> Result<T> {
    if !(a > T::zero()) || !(x >= T::zero()) {
        return Err(Error::Domain(format!(
            "incomplete gamma requires a > 0 and x >= 0, got a = {a}, x = {x}"
        )));
    }
    if x == T::zero() {
        return Ok(T::zero());
    }
    if x < a + T::one() {
        lower_series(a, x)
    } else {
        Ok(T::one() - upper_continued_fraction(a, x)?)
    }
}

fn prefactor<T: Real>(a: T, x: T) -> Result<T> {
    Ok((a * x.ln() - x - ln_gamma(a)?).exp())
}

fn lower_series<T: Real>(a: T, x: T) -> Result<T> {
    let mut ap = a;
    let mut term = T::one() / a;
    let mut sum = term;
    for _ in 0..10_000 {
        ap += T::one();
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * T::epsilon() {
            return Ok(sum * prefactor(a, x)?);
        }
    }
    Err(Error::numeric(
        "incomplete gamma series",
        format!("no convergence for a = {a}, x = {x}"),
    ))
}

// Modified Lentz evaluation of the continued fraction for Γ(a, x).
fn upper_continued_fraction<T: Real>(a: T, x: T) -> Result<T> {
    let tiny = T::min_positive_value() / T::epsilon();
    let mut b = x + T::one() - a;
    let mut c = T::one() / tiny;
    let mut d = T::one() / b;
    let mut h = d;
    for i in 1..10_000 {
        let fi = T::from_usize_lossy(i);
        let an = -fi * (fi - a);
        b += T::lit(2.0);
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = T::one() / d;
        let delta = d * c;
        h *= delta;
        if (delta - T::one()).abs() < T::epsilon() {
            return Ok(h * prefactor(a, x)?);
        }
    }
    Err(Error::numeric(
        "incomplete gamma continued fraction",
        format!("no convergence for a = {a}, x = {x}"),
    ))
}
