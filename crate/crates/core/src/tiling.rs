//! Polygons with angles `pi / r_i` on the sphere or the Euclidean plane, the
//! orbits of their reflection groups, and SVG rendering.
//!
//! Both geometries use 3x3 matrices. Sphere points are unit vectors and
//! isometries are orthogonal; plane points are `(x, y, 1)` and isometries are
//! affine. A side is the half-space `h . x >= 0` for a covector `h`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use nalgebra::{Matrix3, Rotation3, Unit, Vector3};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::signature::{Order, OrderSet, SignatureKind};

/// Largest reflection word length explored.
pub const MAX_DEPTH: usize = 32;

/// Isometries closer than this (max entry difference) are identified.
pub const DEDUP_TOLERANCE: f64 = 1e-8;

/// Tolerance for measured angles and boundary membership.
pub const ANGLE_TOLERANCE: f64 = 1e-9;

/// Half-length used to truncate unbounded Euclidean polygons.
const TRUNCATION: f64 = 50.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    Sphere,
    Euclidean,
}

#[derive(Clone, Debug)]
pub struct GeodesicPolygon {
    pub space: Space,
    pub orders: OrderSet,
    /// Boundary vertices, counterclockwise.
    pub vertices: Vec<Vector3<f64>>,
    /// Order realized at each boundary vertex; `None` for points that are not
    /// corners (digon side midpoints, truncation corners).
    pub corner_orders: Vec<Option<Order>>,
    /// Inward side covectors, one per side `vertices[i] -> vertices[i + 1]`.
    pub sides: Vec<Vector3<f64>>,
    /// Whether each side is a mirror (truncation sides are not).
    pub mirror_sides: Vec<bool>,
}

fn e2(x: f64, y: f64) -> Vector3<f64> {
    Vector3::new(x, y, 1.0)
}

impl GeodesicPolygon {
    fn new(space: Space, orders: OrderSet, vertices: Vec<Vector3<f64>>, corner_orders: Vec<Option<Order>>, mirror_sides: Vec<bool>) -> Self {
        let n = vertices.len();
        let inside = match space {
            Space::Sphere => vertices.iter().sum::<Vector3<f64>>().normalize(),
            Space::Euclidean => vertices.iter().sum::<Vector3<f64>>() / n as f64,
        };
        let sides = (0..n)
            .map(|i| {
                let (p, q) = (vertices[i], vertices[(i + 1) % n]);
                let h = match space {
                    Space::Sphere => p.cross(&q).normalize(),
                    Space::Euclidean => {
                        let d = (q - p).normalize();
                        let nrm = Vector3::new(-d.y, d.x, 0.0);
                        Vector3::new(nrm.x, nrm.y, -nrm.dot(&p))
                    }
                };
                if h.dot(&inside) < 0.0 { -h } else { h }
            })
            .collect();
        GeodesicPolygon { space, orders, vertices, corner_orders, sides, mirror_sides }
    }

    /// Reflections in the mirror sides, without repeats.
    pub fn mirrors(&self) -> Vec<Matrix3<f64>> {
        let mut out: Vec<Matrix3<f64>> = Vec::new();
        for (h, &m) in self.sides.iter().zip(&self.mirror_sides) {
            if !m {
                continue;
            }
            let r = reflection(self.space, h);
            if !out.iter().any(|x| max_diff(x, &r) < DEDUP_TOLERANCE) {
                out.push(r);
            }
        }
        out
    }

    /// Interior angle at each corner vertex, in corner order.
    pub fn measured_angles(&self) -> Vec<(Order, f64)> {
        let n = self.vertices.len();
        let mut out = Vec::new();
        for i in 0..n {
            let Some(o) = self.corner_orders[i] else { continue };
            let v = self.vertices[i];
            let prev = self.vertices[(i + n - 1) % n];
            let next = self.vertices[(i + 1) % n];
            let (t1, t2) = match self.space {
                Space::Sphere => (prev - v * prev.dot(&v), next - v * next.dot(&v)),
                Space::Euclidean => (prev - v, next - v),
            };
            let c = (t1.dot(&t2) / (t1.norm() * t2.norm())).clamp(-1.0, 1.0);
            out.push((o, c.acos()));
        }
        out
    }

    /// Sum of `pi - angle` over corners, with `pi` for each vertex at
    /// infinity.
    pub fn external_angle_sum(&self) -> f64 {
        let corners: f64 = self.measured_angles().iter().map(|(_, a)| PI - a).sum();
        corners + PI * self.orders.inf_count() as f64
    }

    /// `min_i h_i . x`: positive inside, zero on the boundary.
    pub fn depth_of(&self, x: &Vector3<f64>) -> f64 {
        self.sides.iter().map(|h| h.dot(x)).fold(f64::INFINITY, f64::min)
    }

    pub fn centroid(&self) -> Vector3<f64> {
        let sum: Vector3<f64> = self.vertices.iter().sum();
        match self.space {
            Space::Sphere => sum.normalize(),
            Space::Euclidean => sum / self.vertices.len() as f64,
        }
    }
}

fn reflection(space: Space, h: &Vector3<f64>) -> Matrix3<f64> {
    match space {
        Space::Sphere => Matrix3::identity() - 2.0 * h * h.transpose(),
        Space::Euclidean => {
            // x -> x - 2 (n.x + h_z) n for unit normal n = (h_x, h_y)
            let n = Vector3::new(h.x, h.y, 0.0);
            let mut m = Matrix3::identity() - 2.0 * n * n.transpose();
            m[(0, 2)] = -2.0 * h.z * h.x;
            m[(1, 2)] = -2.0 * h.z * h.y;
            m
        }
    }
}

fn max_diff(a: &Matrix3<f64>, b: &Matrix3<f64>) -> f64 {
    (a - b).abs().max()
}

/// The polygon whose reflection group has signature `r`.
pub fn build_polygon(r: &OrderSet) -> Result<GeodesicPolygon> {
    use Order::{Finite as F, Inf};
    let class = r.classify();
    let o = r.orders();
    match class.kind {
        SignatureKind::Hyperbolic => Err(Error::usage(format!("{r} is hyperbolic; only spherical and Euclidean polygons are built"))),
        SignatureKind::Elliptic => match *o {
            [F(k), F(_)] => {
                // digon between two meridians at angle pi/k
                let t = PI / f64::from(k);
                let verts = vec![
                    Vector3::new(0.0, 0.0, 1.0),
                    Vector3::new(t.cos(), t.sin(), 0.0),
                    Vector3::new(0.0, 0.0, -1.0),
                    Vector3::new(1.0, 0.0, 0.0),
                ];
                Ok(GeodesicPolygon::new(Space::Sphere, r.clone(), verts, vec![Some(F(k)), None, Some(F(k)), None], vec![true; 4]))
            }
            [F(p), F(q), F(s)] => {
                let (al, be, ga) = (PI / f64::from(p), PI / f64::from(q), PI / f64::from(s));
                let side = |x: f64, y: f64, z: f64| ((x.cos() + y.cos() * z.cos()) / (y.sin() * z.sin())).acos();
                let c = side(ga, al, be);
                let b = side(be, al, ga);
                let a = Vector3::new(0.0, 0.0, 1.0);
                let bv = Vector3::new(c.sin(), 0.0, c.cos());
                let cv = Vector3::new(b.sin() * al.cos(), b.sin() * al.sin(), b.cos());
                Ok(GeodesicPolygon::new(Space::Sphere, r.clone(), vec![a, bv, cv], vec![Some(F(p)), Some(F(q)), Some(F(s))], vec![true; 3]))
            }
            _ => unreachable!("elliptic sets have two or three entries"),
        },
        SignatureKind::Parabolic => {
            let (verts, corners, mirrors) = match *o {
                [F(3), F(3), F(3)] => (
                    vec![e2(0.0, 0.0), e2(1.0, 0.0), e2(0.5, 3f64.sqrt() / 2.0)],
                    vec![Some(F(3)); 3],
                    vec![true; 3],
                ),
                [F(2), F(4), F(4)] => (
                    vec![e2(0.0, 0.0), e2(1.0, 0.0), e2(0.0, 1.0)],
                    vec![Some(F(2)), Some(F(4)), Some(F(4))],
                    vec![true; 3],
                ),
                [F(2), F(3), F(6)] => (
                    vec![e2(0.0, 0.0), e2(1.0, 0.0), e2(0.0, 3f64.sqrt())],
                    vec![Some(F(2)), Some(F(3)), Some(F(6))],
                    vec![true; 3],
                ),
                [F(2), F(2), F(2), F(2)] => (
                    vec![e2(0.0, 0.0), e2(1.0, 0.0), e2(1.0, 0.6), e2(0.0, 0.6)],
                    vec![Some(F(2)); 4],
                    vec![true; 4],
                ),
                [F(2), F(2), Inf] => (
                    vec![e2(0.0, 0.0), e2(TRUNCATION, 0.0), e2(TRUNCATION, 1.0), e2(0.0, 1.0)],
                    vec![Some(F(2)), None, None, Some(F(2))],
                    vec![true, false, true, true],
                ),
                [Inf, Inf] => (
                    vec![e2(-TRUNCATION, 0.0), e2(TRUNCATION, 0.0), e2(TRUNCATION, 1.0), e2(-TRUNCATION, 1.0)],
                    vec![None; 4],
                    vec![true, false, true, false],
                ),
                _ => unreachable!("parabolic sets are the six listed"),
            };
            Ok(GeodesicPolygon::new(Space::Euclidean, r.clone(), verts, corners, mirrors))
        }
    }
}

#[derive(Clone, Debug)]
pub struct OrbitElement {
    pub isometry: Matrix3<f64>,
    /// Length of the reflection word that first reached this element.
    pub word_length: usize,
    /// Odd number of reflections: drawn black.
    pub black: bool,
}

#[derive(Clone, Debug)]
pub struct ReflectionOrbit {
    pub polygon: GeodesicPolygon,
    pub elements: Vec<OrbitElement>,
    pub depth: usize,
    /// No new element appeared at the last level.
    pub closed: bool,
}

impl ReflectionOrbit {
    /// Vertices of tile `i`.
    pub fn tile(&self, i: usize) -> Vec<Vector3<f64>> {
        let g = &self.elements[i].isometry;
        self.polygon.vertices.iter().map(|v| g * v).collect()
    }

    /// Whether `x` lies in tile `i`, and its depth there.
    fn tile_depth(&self, i: usize, x: &Vector3<f64>) -> f64 {
        let g_inv = match self.polygon.space {
            Space::Sphere => self.elements[i].isometry.transpose(),
            Space::Euclidean => self.elements[i].isometry.try_inverse().expect("isometry"),
        };
        self.polygon.depth_of(&(g_inv * x))
    }
}

/// Breadth-first closure under the side reflections, up to `depth`
/// reflections. Finite groups close before `MAX_DEPTH`.
pub fn reflect_orbit(poly: &GeodesicPolygon, depth: usize) -> Result<ReflectionOrbit> {
    if depth > MAX_DEPTH {
        return Err(Error::resource("reflection depth", MAX_DEPTH as u64));
    }
    let mirrors = poly.mirrors();
    let mut elements = vec![OrbitElement { isometry: Matrix3::identity(), word_length: 0, black: false }];
    let mut frontier = vec![0usize];
    let mut closed = false;
    for level in 1..=depth {
        let mut next = Vec::new();
        for &i in &frontier {
            for s in &mirrors {
                let g = elements[i].isometry * s;
                if !elements.iter().any(|e| max_diff(&e.isometry, &g) < DEDUP_TOLERANCE) {
                    elements.push(OrbitElement { isometry: g, word_length: level, black: level % 2 == 1 });
                    next.push(elements.len() - 1);
                }
            }
        }
        if next.is_empty() {
            closed = true;
            break;
        }
        frontier = next;
    }
    Ok(ReflectionOrbit { polygon: poly.clone(), elements, depth, closed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexStabilizer {
    pub order: u32,
    pub rotations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TilingReport {
    pub tiles: usize,
    pub closed: bool,
    pub centroids_distinct: bool,
    pub samples: usize,
    /// Sample points inside two tiles away from their boundaries.
    pub overlaps: usize,
    /// Sample points in no tile (checked for closed orbits only).
    pub uncovered: usize,
    pub parity_consistent: bool,
    pub vertex_stabilizers: Vec<VertexStabilizer>,
    pub ok: bool,
}

/// Deterministic, roughly uniform points on the sphere.
fn fibonacci_sphere(n: usize) -> Vec<Vector3<f64>> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let t = golden * i as f64;
            Vector3::new(r * t.cos(), r * t.sin(), z)
        })
        .collect()
}

/// Checks that tiles are distinct, do not overlap on a sample, cover the
/// sphere when the orbit is closed, that reflection parity matches the
/// determinant, and that each corner of order `r` is fixed by exactly `r`
/// rotations when the orbit is large enough to contain its stabilizer.
pub fn check_tiling(orbit: &ReflectionOrbit) -> TilingReport {
    let poly = &orbit.polygon;
    let n = orbit.elements.len();
    let centroids: Vec<Vector3<f64>> = orbit.elements.iter().map(|e| e.isometry * poly.centroid()).collect();
    let mut centroids_distinct = true;
    for i in 0..n {
        for j in i + 1..n {
            centroids_distinct &= (centroids[i] - centroids[j]).norm() > 1e-6;
        }
    }

    let samples: Vec<Vector3<f64>> = match poly.space {
        Space::Sphere => fibonacci_sphere(3000),
        Space::Euclidean => {
            let c = poly.centroid();
            let mut v = Vec::new();
            for i in 0..40 {
                for j in 0..40 {
                    v.push(Vector3::new(c.x - 2.0 + 0.1 * i as f64 + 0.013, c.y - 2.0 + 0.1 * j as f64 + 0.007, 1.0));
                }
            }
            v
        }
    };
    let (mut overlaps, mut uncovered) = (0, 0);
    for x in &samples {
        let depths: Vec<f64> = (0..n).map(|i| orbit.tile_depth(i, x)).collect();
        let inside = depths.iter().filter(|&&d| d >= -ANGLE_TOLERANCE).count();
        if depths.iter().filter(|&&d| d > 1e-7).count() > 1 {
            overlaps += 1;
        }
        if orbit.closed && inside == 0 {
            uncovered += 1;
        }
    }

    let parity_consistent = orbit.elements.iter().all(|e| {
        let det = match poly.space {
            Space::Sphere => e.isometry.determinant(),
            Space::Euclidean => e.isometry.fixed_view::<2, 2>(0, 0).determinant(),
        };
        (det < 0.0) == e.black
    });

    let mut vertex_stabilizers = Vec::new();
    for (v, o) in poly.vertices.iter().zip(&poly.corner_orders) {
        let Some(Order::Finite(r)) = o else { continue };
        if !orbit.closed && orbit.depth < 2 * *r as usize {
            continue;
        }
        let rotations = orbit
            .elements
            .iter()
            .filter(|e| !e.black && (e.isometry * v - v).norm() < 1e-8)
            .count();
        vertex_stabilizers.push(VertexStabilizer { order: *r, rotations });
    }
    let ok = centroids_distinct
        && overlaps == 0
        && uncovered == 0
        && parity_consistent
        && vertex_stabilizers.iter().all(|s| s.rotations == s.order as usize);
    TilingReport {
        tiles: n,
        closed: orbit.closed,
        centroids_distinct,
        samples: samples.len(),
        overlaps,
        uncovered,
        parity_consistent,
        vertex_stabilizers,
        ok,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SvgOptions {
    pub size_px: u32,
    /// Half-width of the drawn region in model units.
    pub extent: f64,
    pub white: String,
    pub black: String,
    pub stroke: String,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            size_px: 800,
            extent: 3.0,
            white: "#ffffff".into(),
            black: "#262626".into(),
            stroke: "#7f7f7f".into(),
        }
    }
}

/// Points along the boundary of a tile, with geodesic sides subdivided on
/// the sphere.
fn boundary_points(space: Space, verts: &[Vector3<f64>]) -> Vec<Vector3<f64>> {
    const STEPS: usize = 24;
    let n = verts.len();
    let mut out = Vec::new();
    for i in 0..n {
        let (p, q) = (verts[i], verts[(i + 1) % n]);
        match space {
            Space::Euclidean => out.push(p),
            Space::Sphere => {
                let w = p.dot(&q).clamp(-1.0, 1.0).acos();
                for k in 0..STEPS {
                    let t = k as f64 / STEPS as f64;
                    let x = if w < 1e-12 { p } else { (p * ((1.0 - t) * w).sin() + q * (t * w).sin()) / w.sin() };
                    out.push(x.normalize());
                }
            }
        }
    }
    out
}

/// Clamp far projected points; they only occur next to the projection pole.
const FAR: f64 = 1e4;

fn fmt_pt(buf: &mut String, cmd: char, x: f64, y: f64) {
    let _ = write!(buf, "{cmd}{:.4} {:.4} ", x.clamp(-FAR, FAR), (-y).clamp(-FAR, FAR));
}

/// SVG document for an orbit. Sphere tiles are stereographically projected
/// from the north pole after a fixed generic rotation; the tile around the
/// pole becomes the outside of its boundary. Output is byte-deterministic.
pub fn emit_svg(orbit: &ReflectionOrbit, opts: &SvgOptions) -> String {
    let poly = &orbit.polygon;
    let s = opts.extent;
    let (cx, cy) = match poly.space {
        Space::Sphere => (0.0, 0.0),
        Space::Euclidean => {
            let c = poly.centroid();
            (c.x, c.y)
        }
    };
    let tilt = Rotation3::from_axis_angle(&Unit::new_normalize(Vector3::new(1.0, 2.0, 3.0)), 0.7);
    let pole_tile = match poly.space {
        Space::Sphere => {
            let pole = tilt.inverse() * Vector3::new(0.0, 0.0, 1.0);
            (0..orbit.elements.len()).max_by(|&a, &b| orbit.tile_depth(a, &pole).total_cmp(&orbit.tile_depth(b, &pole)))
        }
        Space::Euclidean => None,
    };
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{px}" height="{px}" viewBox="{:.4} {:.4} {:.4} {:.4}">"#,
        cx - s,
        -cy - s,
        2.0 * s,
        2.0 * s,
        px = opts.size_px
    );
    let _ = writeln!(out, "<title>{} {}</title>", poly.orders, orbit.elements.len());
    let stroke_width = 2.0 * s / f64::from(opts.size_px);
    for (i, e) in orbit.elements.iter().enumerate() {
        let verts = orbit.tile(i);
        let mut d = String::new();
        let mut evenodd = false;
        if Some(i) == pole_tile {
            fmt_pt(&mut d, 'M', cx - 2.0 * s, cy - 2.0 * s);
            fmt_pt(&mut d, 'L', cx + 2.0 * s, cy - 2.0 * s);
            fmt_pt(&mut d, 'L', cx + 2.0 * s, cy + 2.0 * s);
            fmt_pt(&mut d, 'L', cx - 2.0 * s, cy + 2.0 * s);
            d.push_str("Z ");
            evenodd = true;
        }
        for (k, p) in boundary_points(poly.space, &verts).iter().enumerate() {
            let (x, y) = match poly.space {
                Space::Sphere => {
                    let q = tilt * p;
                    let den = (1.0 - q.z).max(1e-12);
                    (q.x / den, q.y / den)
                }
                Space::Euclidean => (p.x, p.y),
            };
            fmt_pt(&mut d, if k == 0 { 'M' } else { 'L' }, x, y);
        }
        d.push('Z');
        let fill = if e.black { &opts.black } else { &opts.white };
        let rule = if evenodd { r#" fill-rule="evenodd""# } else { "" };
        let _ = writeln!(
            out,
            r#"<path d="{d}" fill="{fill}"{rule} stroke="{}" stroke-width="{stroke_width:.4}"/>"#,
            opts.stroke
        );
    }
    out.push_str("</svg>\n");
    out
}
