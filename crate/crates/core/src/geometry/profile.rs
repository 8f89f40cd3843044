use super::{Point, ReferencePoint, Region, GEOM_TOL};
use crate::error::{Error, Result};
use crate::scalar::{acos_clamped, clamp, Real};

#[derive(Debug, Clone)]
struct Edge<T> {
    normal_angle: T,
    /// Perpendicular distance from the receiver, clamped at 0.
    distance: T,
}

#[derive(Debug, Clone)]
enum Shape<T> {
    Disk {
        radius: T,
        offset: T,
    },
    Polygon {
        edges: Vec<Edge<T>>,
        /// Vertices relative to the receiver.
        rel: Vec<Point<T>>,
        interior: Vec<T>,
    },
}

/// Law of the distance `R` from the receiver to a uniform point of the region.
///
/// `pdf(r) = r·Θ(r)/|A|` where `Θ(r)` is the inside-arc measure; the CDF is the
/// exact area of the disk of radius `r` clipped to the region.
#[derive(Debug, Clone)]
pub struct DistanceProfile<T> {
    shape: Shape<T>,
    area: T,
    r_max: T,
    breakpoints: Vec<T>,
}

/// Builds the distance profile for a validated reference point.
pub fn distance_profile<T: Real>(
    region: &Region<T>,
    y0: &ReferencePoint<T>,
) -> Result<DistanceProfile<T>> {
    DistanceProfile::new(region, y0.location())
}

/// `Θ(r)`: measure of the directions whose point at distance `r` from `y0` is
/// inside the region.
pub fn inside_arc_measure<T: Real>(region: &Region<T>, y0: Point<T>, r: T) -> Result<T> {
    if !(r >= T::zero()) {
        return Err(Error::invalid(format!("radius must be nonnegative, got {r}")));
    }
    Ok(DistanceProfile::new(region, y0)?.theta(r))
}

impl<T: Real> DistanceProfile<T> {
    pub fn new(region: &Region<T>, y0: Point<T>) -> Result<Self> {
        if !region.contains(y0) {
            return Err(Error::invalid(format!(
                "reference point ({}, {}) lies outside the region",
                y0.x, y0.y
            )));
        }
        let tol = T::lit(GEOM_TOL) * region.scale();
        let area = region.area();
        match region {
            Region::Disk { center, radius } => {
                let offset = y0.distance(*center).min(*radius);
                let mut breakpoints = vec![];
                if *radius - offset > tol {
                    breakpoints.push(*radius - offset);
                }
                if offset > tol {
                    breakpoints.push(*radius + offset);
                }
                let r_max = *radius + offset;
                Ok(DistanceProfile {
                    shape: Shape::Disk { radius: *radius, offset },
                    area,
                    r_max,
                    breakpoints,
                })
            }
            Region::Polygon(poly) => {
                let n = poly.vertices().len();
                let mut edges = Vec::with_capacity(n);
                let mut rel = Vec::with_capacity(n);
                let mut interior = Vec::with_capacity(n);
                for i in 0..n {
                    let e = poly.vertex(i + 1) - poly.vertex(i);
                    edges.push(Edge {
                        normal_angle: (-e.x).atan2(e.y),
                        distance: poly.edge_distance(i, y0).max(T::zero()),
                    });
                    rel.push(poly.vertex(i) - y0);
                    interior.push(poly.interior_angle(i));
                }
                let mut cand: Vec<T> = edges
                    .iter()
                    .map(|e| e.distance)
                    .chain(rel.iter().map(|v| v.norm()))
                    .filter(|&x| x > tol)
                    .collect();
                cand.sort_by(|a, b| a.partial_cmp(b).expect("finite distances"));
                let mut breakpoints: Vec<T> = Vec::with_capacity(cand.len());
                for x in cand {
                    match breakpoints.last() {
                        Some(&last) if x - last <= tol => {}
                        _ => breakpoints.push(x),
                    }
                }
                let r_max = rel.iter().map(|v| v.norm()).fold(T::zero(), T::max);
                if let Some(last) = breakpoints.last_mut() {
                    *last = r_max;
                }
                Ok(DistanceProfile {
                    shape: Shape::Polygon { edges, rel, interior },
                    area,
                    r_max,
                    breakpoints,
                })
            }
        }
    }

    pub fn area(&self) -> T {
        self.area
    }

    pub fn r_max(&self) -> T {
        self.r_max
    }

    /// Sorted critical radii; the last one is `r_max`.
    pub fn breakpoints(&self) -> &[T] {
        &self.breakpoints
    }

    /// `[0, breakpoints...]`, ready for piecewise quadrature.
    pub fn partition(&self) -> Vec<T> {
        std::iter::once(T::zero()).chain(self.breakpoints.iter().copied()).collect()
    }

    /// Inside-arc measure `Θ(r)`.
    pub fn theta(&self, r: T) -> T {
        if r > self.r_max {
            return T::zero();
        }
        match &self.shape {
            Shape::Disk { radius, offset } => {
                if r <= *radius - *offset {
                    T::two_pi()
                } else if r >= *radius + *offset {
                    T::zero()
                } else {
                    let arg = (r * r + *offset * *offset - *radius * *radius)
                        / (T::lit(2.0) * *offset * r);
                    T::lit(2.0) * acos_clamped(arg)
                }
            }
            Shape::Polygon { edges, .. } => {
                if r >= self.r_max {
                    return T::zero();
                }
                T::two_pi() - excluded_measure(edges, r)
            }
        }
    }

    pub fn pdf(&self, r: T) -> T {
        if !(r > T::zero()) || r > self.r_max {
            return T::zero();
        }
        r * self.theta(r) / self.area
    }

    pub fn cdf(&self, r: T) -> T {
        if !(r > T::zero()) {
            return T::zero();
        }
        if r >= self.r_max {
            return T::one();
        }
        let covered = match &self.shape {
            Shape::Disk { radius, offset } => lens_area(r, *radius, *offset),
            Shape::Polygon { rel, .. } => {
                let n = rel.len();
                (0..n).map(|i| clipped_triangle(rel[i], rel[(i + 1) % n], r)).sum()
            }
        };
        clamp(covered / self.area, T::zero(), T::one())
    }

    /// The leading interval `[0, υ]` on which `Θ` is constant, as `(Θ, υ)`.
    /// Interior points give `2π`, edge points `π`, vertices their interior angle.
    pub fn leading_sector(&self) -> Option<(T, T)> {
        let upsilon = *self.breakpoints.first()?;
        if !(upsilon > T::zero()) {
            return None;
        }
        if let Shape::Disk { radius, offset } = &self.shape {
            // On the circumference no interval around 0 has constant angle.
            if !(*radius - *offset >= upsilon) {
                return None;
            }
        }
        Some((self.theta(upsilon * T::lit(0.5)), upsilon))
    }

    /// `r·Θ(r)/|A|` assembled from the per-edge `B` and per-vertex `C` terms of
    /// the inclusion-exclusion of excluded arcs.
    ///
    /// The decomposition assumes that excluded arcs only overlap in adjacent
    /// pairs around a vertex already inside the circle. Returns `None` for
    /// disks and for radii where that assumption fails (for instance a side
    /// whose line is within reach but whose segment is not).
    pub fn pdf_bc_decomposition(&self, r: T) -> Option<T> {
        let Shape::Polygon { edges, rel, interior } = &self.shape else {
            return None;
        };
        if !(r > T::zero()) || r > self.r_max {
            return Some(T::zero());
        }
        let n = edges.len();
        let half_width = |e: &Edge<T>| {
            if r > e.distance {
                Some(acos_clamped(e.distance / r))
            } else {
                None
            }
        };
        let slack = T::lit(1e-12);
        for i in 0..n {
            for j in i + 1..n {
                let (Some(hi), Some(hj)) = (half_width(&edges[i]), half_width(&edges[j])) else {
                    continue;
                };
                let gap = angular_distance(edges[i].normal_angle, edges[j].normal_angle);
                let overlaps = hi + hj - gap > slack;
                let shared = if j == i + 1 {
                    Some(j)
                } else if i == 0 && j == n - 1 {
                    Some(0)
                } else {
                    None
                };
                let vertex_inside = shared.is_some_and(|v| rel[v].norm() < r);
                if overlaps != vertex_inside {
                    return None;
                }
            }
        }
        let two = T::lit(2.0);
        let mut acc = T::two_pi() * r;
        for e in edges {
            if let Some(h) = half_width(e) {
                acc -= two * r * h;
            }
        }
        for l in 0..n {
            if rel[l].norm() < r {
                let p_cur = edges[l].distance;
                let p_prev = edges[(l + n - 1) % n].distance;
                acc += r
                    * (-T::PI() + interior[l] + acos_clamped(p_cur / r) + acos_clamped(p_prev / r));
            }
        }
        Some(acc / self.area)
    }
}

fn angular_distance<T: Real>(a: T, b: T) -> T {
    let tau = T::two_pi();
    let d = (a - b).abs();
    let d = d - tau * (d / tau).floor();
    d.min(tau - d)
}

fn excluded_measure<T: Real>(edges: &[Edge<T>], r: T) -> T {
    let tau = T::two_pi();
    let mut arcs: Vec<(T, T)> = Vec::with_capacity(2 * edges.len());
    for e in edges {
        if r > e.distance {
            let h = acos_clamped(e.distance / r);
            let raw = e.normal_angle - h;
            let start = raw - tau * (raw / tau).floor();
            let end = start + h + h;
            if end > tau {
                arcs.push((start, tau));
                arcs.push((T::zero(), end - tau));
            } else {
                arcs.push((start, end));
            }
        }
    }
    if arcs.is_empty() {
        return T::zero();
    }
    arcs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite angles"));
    let mut total = T::zero();
    let (mut lo, mut hi) = arcs[0];
    for &(s, e) in &arcs[1..] {
        if s > hi {
            total += hi - lo;
            lo = s;
            hi = e;
        } else if e > hi {
            hi = e;
        }
    }
    total += hi - lo;
    total.min(tau)
}

/// Area of the intersection of two disks: radius `r` at distance `d` from the
/// center of a disk of radius `w`.
fn lens_area<T: Real>(r: T, w: T, d: T) -> T {
    if d + r <= w {
        return T::PI() * r * r;
    }
    if r >= d + w {
        return T::PI() * w * w;
    }
    let two = T::lit(2.0);
    let a1 = acos_clamped((d * d + r * r - w * w) / (two * d * r));
    let a2 = acos_clamped((d * d + w * w - r * r) / (two * d * w));
    let k = ((-d + r + w) * (d + r - w) * (d - r + w) * (d + r + w)).max(T::zero());
    r * r * a1 + w * w * a2 - T::lit(0.5) * k.sqrt()
}

/// Signed area of triangle `(0, a, b)` intersected with the disk of radius `r`
/// centered at the origin.
fn clipped_triangle<T: Real>(a: Point<T>, b: Point<T>, r: T) -> T {
    let d = b - a;
    let qa = d.dot(d);
    if qa == T::zero() {
        return T::zero();
    }
    let qb = T::lit(2.0) * a.dot(d);
    let qc = a.dot(a) - r * r;
    let disc = qb * qb - T::lit(4.0) * qa * qc;
    let mut cuts = [T::zero(), T::one(), T::one(), T::one()];
    let mut n = 1;
    if disc > T::zero() {
        let sq = disc.sqrt();
        let q = -T::lit(0.5) * (qb + qb.signum() * sq);
        let (mut t1, mut t2) = if q != T::zero() { (q / qa, qc / q) } else { (T::zero(), T::zero()) };
        if t1 > t2 {
            std::mem::swap(&mut t1, &mut t2);
        }
        for t in [t1, t2] {
            if t > T::zero() && t < T::one() {
                cuts[n] = t;
                n += 1;
            }
        }
    }
    cuts[n] = T::one();
    let mut area = T::zero();
    let half = T::lit(0.5);
    for k in 0..n {
        let p = a + d * cuts[k];
        let q = a + d * cuts[k + 1];
        let mid = (p + q) * half;
        if mid.dot(mid) <= r * r {
            area += half * p.cross(q);
        } else {
            area += half * r * r * p.cross(q).atan2(p.dot(q));
        }
    }
    area
}
