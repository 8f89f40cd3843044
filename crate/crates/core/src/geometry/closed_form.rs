//! Piecewise closed forms of the distance density for the special placements.

use crate::error::{Error, Result};
use crate::scalar::{acos_clamped, Real};

/// Density of the distance from a point at offset `d` from the center of a
/// disk of radius `W` to a uniform point of the disk.
pub fn pdf_disk_closed_form<T: Real>(w: T, d: T, r: T) -> Result<T> {
    if !(w > T::zero()) || !(d >= T::zero()) || d > w || !(r >= T::zero()) {
        return Err(Error::invalid(format!(
            "disk closed form needs 0 <= d <= W and r >= 0, got W = {w}, d = {d}, r = {r}"
        )));
    }
    let area = T::PI() * w * w;
    let two = T::lit(2.0);
    if r <= w - d {
        Ok(two * T::PI() * r / area)
    } else if r <= w + d {
        let arg = (r * r + d * d - w * w) / (two * d * r);
        Ok(two * r * acos_clamped(arg) / area)
    } else {
        Ok(T::zero())
    }
}

/// Density of the distance from the center of a regular `L`-gon with
/// circumradius `W`.
pub fn pdf_regular_polygon_center<T: Real>(sides: usize, w: T, r: T) -> Result<T> {
    if sides < 3 || !(w > T::zero()) || !(r >= T::zero()) {
        return Err(Error::invalid(format!(
            "regular polygon closed form needs L >= 3, W > 0, r >= 0 (L = {sides}, W = {w})"
        )));
    }
    let l = T::from_usize_lossy(sides);
    let area = T::lit(0.5) * l * w * w * (T::two_pi() / l).sin();
    let interior = T::PI() * (l - T::lit(2.0)) / l;
    let apothem = w * (interior * T::lit(0.5)).sin();
    if r <= apothem {
        Ok(T::two_pi() * r / area)
    } else if r <= w {
        let delta = acos_clamped(apothem / r);
        Ok((T::two_pi() - T::lit(2.0) * l * delta) * r / area)
    } else {
        Ok(T::zero())
    }
}

/// Exact constants of the density seen from the π/4 vertex of the
/// quadrilateral built by [`Region::fig2`](super::Region::fig2).
#[derive(Debug, Clone, Copy)]
pub struct Fig2V2Constants<T> {
    /// Coefficient of `r` on the second piece, `δ₃ − π/4`.
    pub coefficient: T,
    /// Distance from the vertex to the line through the third side.
    pub cut: T,
    pub area: T,
}

pub fn fig2_v2_constants<T: Real>(w: T) -> Fig2V2Constants<T> {
    let s2 = T::lit(2.0).sqrt();
    let s3 = T::lit(3.0).sqrt();
    let s6 = T::lit(6.0).sqrt();
    // V3 = W(√3 − √6/2, √6/2), V4 = (0, W), V2 = (√3W, 0).
    let (x3, y3) = (s3 - s6 / T::lit(2.0), s6 / T::lit(2.0));
    let side3 = (T::lit(7.0) - T::lit(3.0) * s2 - s6).sqrt();
    // |(V4 − V3) × (V2 − V3)| / |V4 − V3|, in units of W
    let cross = (-x3) * (-y3) - (T::one() - y3) * (s3 - x3);
    let cut = cross.abs() / side3 * w;
    // interior angle at V3 between V2 and V4
    let (ux, uy) = (s3 - x3, -y3);
    let (vx, vy) = (-x3, T::one() - y3);
    let delta3 = ((ux * vx + uy * vy) / ((ux * ux + uy * uy).sqrt() * side3)).acos();
    // shoelace over (0,0), (√3,0), V3, (0,1)
    let area = (s3 * y3 + x3) * T::lit(0.5) * w * w;
    Fig2V2Constants {
        coefficient: delta3 - T::FRAC_PI_4(),
        cut,
        area,
    }
}

/// Density of the distance from vertex V2 of the quadrilateral built by
/// [`Region::fig2`](super::Region::fig2).
pub fn pdf_fig2_v2_closed_form<T: Real>(w: T, r: T) -> T {
    let k = fig2_v2_constants(w);
    let s3w = T::lit(3.0).sqrt() * w;
    if !(r > T::zero()) {
        T::zero()
    } else if r <= s3w {
        T::FRAC_PI_4() * r / k.area
    } else if r <= T::lit(2.0) * w {
        (k.coefficient - acos_clamped(s3w / r) - acos_clamped(k.cut / r)) * r / k.area
    } else {
        T::zero()
    }
}
