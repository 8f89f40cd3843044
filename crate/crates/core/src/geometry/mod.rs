//! Finite network regions and the distance distribution of a uniform node.

mod closed_form;
mod profile;

pub use closed_form::{
    fig2_v2_constants, pdf_disk_closed_form, pdf_fig2_v2_closed_form, pdf_regular_polygon_center,
    Fig2V2Constants,
};
pub use profile::{distance_profile, inside_arc_measure, DistanceProfile};

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Relative tolerance (in units of the region scale) for containment and
/// breakpoint deduplication.
pub(crate) const GEOM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Real> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    pub fn distance(self, o: Self) -> T {
        (self - o).norm()
    }

    fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl<T: Real> Add for Point<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Real> Sub for Point<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Real> Mul<T> for Point<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        Point::new(self.x * k, self.y * k)
    }
}

/// A strictly convex polygon with counter-clockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon<T> {
    vertices: Vec<Point<T>>,
    area: T,
}

impl<T: Real> ConvexPolygon<T> {
    pub fn new(vertices: Vec<Point<T>>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::invalid(format!("polygon needs at least 3 vertices, got {n}")));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("polygon vertices must be finite"));
        }
        let mut turning = T::zero();
        for i in 0..n {
            let e1 = vertices[(i + 1) % n] - vertices[i];
            let e2 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
            let (l1, l2) = (e1.norm(), e2.norm());
            if l1 == T::zero() || l2 == T::zero() {
                return Err(Error::invalid(format!("repeated vertex at index {}", (i + 1) % n)));
            }
            let cross = e1.cross(e2);
            if cross <= T::lit(GEOM_TOL) * l1 * l2 {
                return Err(Error::invalid(format!(
                    "polygon is not strictly convex and counter-clockwise at vertex {}",
                    (i + 1) % n
                )));
            }
            turning += cross.atan2(e1.dot(e2));
        }
        // All left turns can still wind twice (a pentagram).
        if (turning - T::two_pi()).abs() > T::lit(1e-6) {
            return Err(Error::invalid("polygon winds more than once"));
        }
        let area = shoelace(&vertices);
        Ok(ConvexPolygon { vertices, area })
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn area(&self) -> T {
        self.area
    }

    /// Vertex `i` (0-based, cyclic).
    pub fn vertex(&self, i: usize) -> Point<T> {
        self.vertices[i % self.vertices.len()]
    }

    /// Interior angle δ at vertex `i`.
    pub fn interior_angle(&self, i: usize) -> T {
        let n = self.vertices.len();
        let prev = self.vertex(i + n - 1) - self.vertex(i);
        let next = self.vertex(i + 1) - self.vertex(i);
        next.cross(prev).atan2(next.dot(prev))
    }

    pub fn centroid(&self) -> Point<T> {
        let n = self.vertices.len();
        let (mut cx, mut cy) = (T::zero(), T::zero());
        for i in 0..n {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            let w = a.cross(b);
            cx += (a.x + b.x) * w;
            cy += (a.y + b.y) * w;
        }
        let k = T::lit(6.0) * self.area;
        Point::new(cx / k, cy / k)
    }

    /// Signed distance from `p` to the line through edge `i` (positive inside).
    pub(crate) fn edge_distance(&self, i: usize, p: Point<T>) -> T {
        let a = self.vertex(i);
        let e = self.vertex(i + 1) - a;
        e.cross(p - a) / e.norm()
    }
}

fn shoelace<T: Real>(v: &[Point<T>]) -> T {
    let n = v.len();
    let mut s = T::zero();
    for i in 0..n {
        s += v[i].cross(v[(i + 1) % n]);
    }
    s * T::lit(0.5)
}

/// Spatial support of the binomial point process.
#[derive(Debug, Clone, PartialEq)]
pub enum Region<T> {
    Disk { center: Point<T>, radius: T },
    Polygon(ConvexPolygon<T>),
}

impl<T: Real> Region<T> {
    pub fn disk(center: Point<T>, radius: T) -> Result<Self> {
        if !(radius > T::zero()) || !radius.is_finite() || !center.is_finite() {
            return Err(Error::invalid(format!("disk radius must be positive, got {radius}")));
        }
        Ok(Region::Disk { center, radius })
    }

    pub fn polygon(vertices: Vec<Point<T>>) -> Result<Self> {
        ConvexPolygon::new(vertices).map(Region::Polygon)
    }

    /// Regular `L`-gon with circumradius `W`, first vertex on the positive x axis.
    pub fn regular_polygon(sides: usize, circumradius: T, center: Point<T>) -> Result<Self> {
        if sides < 3 {
            return Err(Error::invalid(format!("regular polygon needs L >= 3, got {sides}")));
        }
        if !(circumradius > T::zero()) || !circumradius.is_finite() {
            return Err(Error::invalid(format!("circumradius must be positive, got {circumradius}")));
        }
        let step = T::two_pi() / T::from_usize_lossy(sides);
        let vertices = (0..sides)
            .map(|k| {
                let phi = step * T::from_usize_lossy(k);
                center + Point::new(phi.cos(), phi.sin()) * circumradius
            })
            .collect();
        Region::polygon(vertices)
    }

    /// Regular `L`-gon whose area equals `area`.
    pub fn regular_polygon_with_area(sides: usize, area: T, center: Point<T>) -> Result<Self> {
        if sides < 3 || !(area > T::zero()) {
            return Err(Error::invalid("regular polygon needs L >= 3 and positive area"));
        }
        let l = T::from_usize_lossy(sides);
        let w = (T::lit(2.0) * area / (l * (T::two_pi() / l).sin())).sqrt();
        Region::regular_polygon(sides, w, center)
    }

    /// The quadrilateral with sides √3W, √3W, √(7 − 3√2 − √6)W and W, and
    /// interior angles π/2 and π/4 at its first two vertices.
    pub fn fig2(w: T) -> Result<Self> {
        if !(w > T::zero()) || !w.is_finite() {
            return Err(Error::invalid(format!("W must be positive, got {w}")));
        }
        let s3 = T::lit(3.0).sqrt();
        let s6 = T::lit(6.0).sqrt();
        let half = T::lit(0.5);
        Region::polygon(vec![
            Point::new(T::zero(), T::zero()),
            Point::new(s3 * w, T::zero()),
            Point::new((s3 - s6 * half) * w, s6 * half * w),
            Point::new(T::zero(), w),
        ])
    }

    pub fn area(&self) -> T {
        match self {
            Region::Disk { radius, .. } => T::PI() * *radius * *radius,
            Region::Polygon(p) => p.area(),
        }
    }

    /// Characteristic length: disk radius, or largest centroid-to-vertex distance.
    pub fn scale(&self) -> T {
        match self {
            Region::Disk { radius, .. } => *radius,
            Region::Polygon(p) => {
                let c = p.centroid();
                p.vertices().iter().map(|v| v.distance(c)).fold(T::zero(), T::max)
            }
        }
    }

    pub fn center(&self) -> Point<T> {
        match self {
            Region::Disk { center, .. } => *center,
            Region::Polygon(p) => p.centroid(),
        }
    }

    pub fn as_polygon(&self) -> Option<&ConvexPolygon<T>> {
        match self {
            Region::Polygon(p) => Some(p),
            Region::Disk { .. } => None,
        }
    }

    /// True when `p` lies in the closed region, within `1e-12·W`.
    pub fn contains(&self, p: Point<T>) -> bool {
        let tol = T::lit(GEOM_TOL) * self.scale();
        match self {
            Region::Disk { center, radius } => p.distance(*center) <= *radius + tol,
            Region::Polygon(poly) => {
                (0..poly.vertices().len()).all(|i| poly.edge_distance(i, p) >= -tol)
            }
        }
    }
}

/// Location of the reference receiver, validated against a region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferencePoint<T> {
    location: Point<T>,
}

impl<T: Real> ReferencePoint<T> {
    pub fn new(region: &Region<T>, location: Point<T>) -> Result<Self> {
        if !location.is_finite() || !region.contains(location) {
            return Err(Error::invalid(format!(
                "reference point ({}, {}) lies outside the region",
                location.x, location.y
            )));
        }
        Ok(ReferencePoint { location })
    }

    pub fn center(region: &Region<T>) -> Self {
        ReferencePoint { location: region.center() }
    }

    /// Polygon vertex `index` (0-based).
    pub fn vertex(region: &Region<T>, index: usize) -> Result<Self> {
        let poly = polygon_of(region, "vertex placement")?;
        if index >= poly.vertices().len() {
            return Err(Error::invalid(format!("vertex index {index} out of range")));
        }
        Ok(ReferencePoint { location: poly.vertex(index) })
    }

    /// Midpoint of polygon edge `index` (0-based, from vertex `index` to `index + 1`).
    pub fn edge_midpoint(region: &Region<T>, index: usize) -> Result<Self> {
        let poly = polygon_of(region, "edge placement")?;
        if index >= poly.vertices().len() {
            return Err(Error::invalid(format!("edge index {index} out of range")));
        }
        let mid = (poly.vertex(index) + poly.vertex(index + 1)) * T::lit(0.5);
        Ok(ReferencePoint { location: mid })
    }

    /// Point at distance `d` from the disk center along the positive x axis.
    pub fn disk_offset(region: &Region<T>, d: T) -> Result<Self> {
        match region {
            Region::Disk { center, radius } => {
                if !(d >= T::zero()) || d > *radius {
                    return Err(Error::invalid(format!("offset d = {d} must lie in [0, W]")));
                }
                Ok(ReferencePoint { location: *center + Point::new(d, T::zero()) })
            }
            Region::Polygon(_) => Err(Error::invalid("disk offset placement needs a disk region")),
        }
    }

    pub fn location(&self) -> Point<T> {
        self.location
    }
}

fn polygon_of<'a, T: Real>(region: &'a Region<T>, what: &str) -> Result<&'a ConvexPolygon<T>> {
    region
        .as_polygon()
        .ok_or_else(|| Error::invalid(format!("{what} needs a polygon region")))
}
