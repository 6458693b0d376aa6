//! Newton polyhedra of germs in at most three variables: the compact-face
//! lattice of `conv(supp) + R^n_{>=0}`, normalized lattice volumes and the
//! Kouchnirenko Newton number.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{self, dot, primitive, saturated_basis, Point};
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Covector {
    pub entries: Vec<i64>,
    /// Minimum of the pairing over the support.
    pub level: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub dim: usize,
    pub vertices: Vec<Point>,
    pub support_points: Vec<Point>,
    /// Facet normal for facets; for lower faces, the primitive sum of the
    /// normals of all facets of the polyhedron containing the face.
    pub normal: Covector,
    pub ambient_subset: Vec<usize>,
}

impl Face {
    pub fn normalized_volume(&self) -> u64 {
        normalized_volume(&self.vertices).expect("face vertices are lattice points")
    }

    /// Lattice length of an edge, `None` for other dimensions.
    pub fn lattice_length(&self) -> Option<u64> {
        (self.dim == 1).then(|| lattice_length(&self.vertices[0], &self.vertices[1]))
    }

    pub fn same_vertices(&self, vertices: &[Point]) -> bool {
        let a: BTreeSet<&Point> = self.vertices.iter().collect();
        let b: BTreeSet<&Point> = vertices.iter().collect();
        a == b
    }

    pub fn contains_point(&self, p: &[i64]) -> bool {
        self.support_points.iter().any(|q| q.as_slice() == p)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NewtonBoundary {
    pub nvars: usize,
    /// Compact faces sorted by dimension, then by vertex list.
    pub faces: Vec<Face>,
    /// `subfaces[i]` lists the faces of dimension `dim - 1` contained in face `i`.
    pub subfaces: Vec<Vec<usize>>,
    pub convenient: bool,
    #[serde(skip)]
    support: Vec<Point>,
}

impl NewtonBoundary {
    pub fn support(&self) -> &[Point] {
        &self.support
    }

    pub fn facets(&self) -> impl Iterator<Item = &Face> {
        let top = self.nvars.saturating_sub(1);
        self.faces.iter().filter(move |f| f.dim == top)
    }

    pub fn faces_of_dim(&self, dim: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == dim)
    }

    pub fn find_face(&self, vertices: &[Point]) -> Option<&Face> {
        self.faces.iter().find(|f| f.same_vertices(vertices))
    }

    /// Vertices of the boundary (0-dimensional compact faces).
    pub fn vertices(&self) -> Vec<Point> {
        self.faces_of_dim(0).map(|f| f.vertices[0].clone()).collect()
    }

    /// Every support point lies on or above every compact facet.
    pub fn supports_above(&self) -> bool {
        self.facets().all(|f| {
            self.support
                .iter()
                .all(|p| dot(&f.normal.entries, p) >= f.normal.level)
        })
    }
}

/// Supporting hyperplanes of facets of `conv(points) + cone(rays)`.
fn polyhedron_facets(points: &[Point], rays: &[Point], n: usize) -> Vec<Covector> {
    let mut out: Vec<Covector> = Vec::new();
    let mut push = |a: Point, level: i64| {
        if !out.iter().any(|c| c.entries == a) {
            out.push(Covector { entries: a, level });
        }
    };
    if n == 1 {
        let lo = points.iter().map(|p| p[0]).min().unwrap();
        push(vec![1], lo);
        if rays.is_empty() {
            let hi = points.iter().map(|p| p[0]).max().unwrap();
            push(vec![-1], -hi);
        }
        return out;
    }
    // A point dominating another one along the rays is never needed to span a facet.
    let generators: Vec<&Point> = points
        .iter()
        .filter(|q| {
            rays.is_empty()
                || !points
                    .iter()
                    .any(|p| p != *q && p.iter().zip(q.iter()).all(|(a, b)| a <= b))
        })
        .collect();
    for p0 in &generators {
        let mut dirs: Vec<Point> = generators
            .iter()
            .filter(|q| **q != *p0)
            .map(|q| lattice::sub(q, p0))
            .collect();
        dirs.extend(rays.iter().cloned());
        for combo in lattice::choose(dirs.len(), n - 1) {
            let vs: Vec<Point> = combo.iter().map(|&i| dirs[i].clone()).collect();
            let normal = lattice::normal_vector(&vs, n);
            if normal.iter().all(|&x| x == 0) {
                continue;
            }
            let normal = primitive(&normal);
            for sign in [1, -1] {
                let a: Point = normal.iter().map(|x| x * sign).collect();
                if rays.iter().any(|r| dot(&a, r) < 0) {
                    continue;
                }
                let level = points.iter().map(|q| dot(&a, q)).min().unwrap();
                if dot(&a, p0) != level {
                    continue;
                }
                let mut span: Vec<Point> = points
                    .iter()
                    .filter(|q| dot(&a, q) == level)
                    .map(|q| lattice::sub(q, p0))
                    .collect();
                span.extend(rays.iter().filter(|r| dot(&a, r) == 0).cloned());
                if lattice::rank(&span, n) == n - 1 {
                    push(a, level);
                }
            }
        }
    }
    out
}

struct RawFace {
    points: Vec<Point>,
    rays: Vec<usize>,
    facets: BTreeSet<usize>,
}

/// All nonempty faces of `conv(points) + cone(rays)` as closed facet sets.
fn face_lattice(points: &[Point], rays: &[Point], n: usize) -> (Vec<Covector>, Vec<RawFace>) {
    let facets = polyhedron_facets(points, rays, n);
    let tight = |f: &Covector, p: &Point| dot(&f.entries, p) == f.level;
    let close = |set: &BTreeSet<usize>| -> Option<RawFace> {
        let pts: Vec<Point> = points
            .iter()
            .filter(|p| set.iter().all(|&j| tight(&facets[j], p)))
            .cloned()
            .collect();
        if pts.is_empty() {
            return None;
        }
        let rs: Vec<usize> = (0..rays.len())
            .filter(|&r| set.iter().all(|&j| dot(&facets[j].entries, &rays[r]) == 0))
            .collect();
        let closed: BTreeSet<usize> = (0..facets.len())
            .filter(|&j| {
                pts.iter().all(|p| tight(&facets[j], p))
                    && rs.iter().all(|&r| dot(&facets[j].entries, &rays[r]) == 0)
            })
            .collect();
        Some(RawFace {
            points: pts,
            rays: rs,
            facets: closed,
        })
    };
    let mut found: BTreeMap<BTreeSet<usize>, RawFace> = BTreeMap::new();
    for j in 0..facets.len() {
        if let Some(f) = close(&BTreeSet::from([j])) {
            found.entry(f.facets.clone()).or_insert(f);
        }
    }
    loop {
        let keys: Vec<BTreeSet<usize>> = found.keys().cloned().collect();
        let mut added = false;
        for (i, a) in keys.iter().enumerate() {
            for b in &keys[i + 1..] {
                let union: BTreeSet<usize> = a.union(b).cloned().collect();
                if found.contains_key(&union) {
                    continue;
                }
                if let Some(f) = close(&union) {
                    if !found.contains_key(&f.facets) {
                        found.insert(f.facets.clone(), f);
                        added = true;
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    (facets, found.into_values().collect())
}

fn affine_dim(points: &[Point], n: usize) -> usize {
    let diffs: Vec<Point> = points.iter().map(|p| lattice::sub(p, &points[0])).collect();
    lattice::rank(&diffs, n)
}

/// Newton boundary of a germ: every compact face of its Newton polyhedron.
pub fn newton_boundary(p: &Polynomial) -> Result<NewtonBoundary> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !num_traits::Zero::is_zero(&p.constant_term()) {
        return Err(Error::NonzeroConstant);
    }
    Ok(boundary_of_support(&p.support(), p.nvars()))
}

pub fn boundary_of_support(support: &[Point], n: usize) -> NewtonBoundary {
    let rays: Vec<Point> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let (facets, raw) = face_lattice(support, &rays, n);
    let vertex_set: BTreeSet<Point> = raw
        .iter()
        .filter(|f| f.rays.is_empty() && f.points.len() == 1)
        .map(|f| f.points[0].clone())
        .collect();
    let mut faces: Vec<(BTreeSet<usize>, Face)> = raw
        .into_iter()
        .filter(|f| f.rays.is_empty())
        .map(|f| {
            let mut sum = vec![0i64; n];
            for &j in &f.facets {
                for (s, x) in sum.iter_mut().zip(&facets[j].entries) {
                    *s += x;
                }
            }
            let entries = primitive(&sum);
            let level = dot(&entries, &f.points[0]);
            let mut vertices: Vec<Point> = f
                .points
                .iter()
                .filter(|p| vertex_set.contains(*p))
                .cloned()
                .collect();
            vertices.sort();
            let mut support_points = f.points.clone();
            support_points.sort();
            let ambient_subset = (0..n)
                .filter(|&i| f.points.iter().any(|p| p[i] > 0))
                .collect();
            let face = Face {
                dim: affine_dim(&f.points, n),
                vertices,
                support_points,
                normal: Covector { entries, level },
                ambient_subset,
            };
            (f.facets, face)
        })
        .collect();
    faces.sort_by(|a, b| (a.1.dim, &a.1.vertices).cmp(&(b.1.dim, &b.1.vertices)));
    let subfaces = faces
        .iter()
        .map(|(ja, fa)| {
            faces
                .iter()
                .enumerate()
                .filter(|(_, (jb, fb))| fb.dim + 1 == fa.dim && ja.is_subset(jb))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let convenient = (0..n).all(|i| {
        support
            .iter()
            .any(|p| p[i] > 0 && (0..n).all(|j| j == i || p[j] == 0))
    });
    NewtonBoundary {
        nvars: n,
        faces: faces.into_iter().map(|(_, f)| f).collect(),
        subfaces,
        convenient,
        support: support.to_vec(),
    }
}

pub fn is_convenient(b: &NewtonBoundary) -> bool {
    b.convenient
}

pub fn lattice_length(a: &[i64], b: &[i64]) -> u64 {
    lattice::gcd_all(&lattice::sub(a, b)).unsigned_abs()
}

/// Convex hull of planar integer points, counter-clockwise, no collinear points.
fn hull_2d(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: &Point, a: &Point, b: &Point| {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Points expressed in a basis of their direction lattice.
fn lattice_coordinates(points: &[Point]) -> (usize, Vec<Point>) {
    let n = points[0].len();
    let diffs: Vec<Point> = points.iter().map(|p| lattice::sub(p, &points[0])).collect();
    let basis = saturated_basis(&diffs, n);
    let coords = diffs.iter().map(|d| lattice::coordinates(&basis, d)).collect();
    (basis.len(), coords)
}

fn polygon_data(coords: &[Point]) -> (u64, u64) {
    let hull = hull_2d(coords);
    let m = hull.len();
    let mut twice_area = 0i64;
    let mut boundary = 0u64;
    for i in 0..m {
        let a = &hull[i];
        let b = &hull[(i + 1) % m];
        twice_area += a[0] * b[1] - a[1] * b[0];
        boundary += lattice_length(a, b);
    }
    (twice_area.unsigned_abs(), boundary)
}

/// Normalized lattice volume (`k!` times the Euclidean volume measured in a
/// basis of the direction lattice) of the convex hull of `points`.
pub fn normalized_volume(points: &[Point]) -> Result<u64> {
    if points.is_empty() {
        return Err(Error::Io("empty point set".into()));
    }
    let (k, coords) = lattice_coordinates(points);
    Ok(match k {
        0 => 1,
        1 => {
            let xs: Vec<i64> = coords.iter().map(|c| c[0]).collect();
            (xs.iter().max().unwrap() - xs.iter().min().unwrap()) as u64
        }
        2 => polygon_data(&coords).0,
        3 => {
            let facets = polyhedron_facets(&coords, &[], 3);
            let apex = &coords[0];
            facets
                .iter()
                .map(|f| {
                    let height = (dot(&f.entries, apex) - f.level) as u64;
                    if height == 0 {
                        return 0;
                    }
                    let on: Vec<Point> = coords
                        .iter()
                        .filter(|c| dot(&f.entries, c) == f.level)
                        .cloned()
                        .collect();
                    height * normalized_volume(&on).unwrap()
                })
                .sum()
        }
        other => return Err(Error::UnsupportedArity(other)),
    })
}

/// Lattice points in the relative interior of a 2-dimensional face (Pick).
pub fn interior_lattice_points(face: &Face) -> Result<u64> {
    if face.dim != 2 {
        return Err(Error::WrongFaceDimension {
            expected: 2,
            got: face.dim,
        });
    }
    let (_, coords) = lattice_coordinates(&face.vertices);
    let (area2, boundary) = polygon_data(&coords);
    Ok((area2 + 2 - boundary) / 2)
}

/// Level and normalized volume of one top-dimensional compact face of a
/// coordinate restriction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetDatum {
    pub level: i64,
    pub nvol: u64,
}

/// Top-dimensional compact faces of `Γ(g|_{R^I})` inside `R^I`; empty when the
/// restriction vanishes.
pub fn coordinate_facets(support: &[Point], subset: &[usize]) -> Vec<FacetDatum> {
    let projected: Vec<Point> = support
        .iter()
        .filter(|p| p.iter().enumerate().all(|(i, &x)| x == 0 || subset.contains(&i)))
        .map(|p| subset.iter().map(|&i| p[i]).collect())
        .collect();
    if projected.is_empty() {
        return Vec::new();
    }
    let k = subset.len();
    let b = boundary_of_support(&projected, k);
    b.faces_of_dim(k - 1)
        .map(|f| FacetDatum {
            level: f.normal.level,
            nvol: f.normalized_volume(),
        })
        .collect()
}

pub fn nonempty_subsets(n: usize) -> Vec<Vec<usize>> {
    (1..(1usize << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

/// Kouchnirenko's Newton number of a convenient boundary.
pub fn newton_number(b: &NewtonBoundary) -> Result<i64> {
    if !b.convenient {
        return Err(Error::NotConvenient);
    }
    let n = b.nvars;
    let sign = |k: usize| if k.is_multiple_of(2) { 1i64 } else { -1 };
    let mut total = sign(n);
    for subset in nonempty_subsets(n) {
        // |I|! Vol(Γ_- ∩ R^I) by coning each facet to the origin
        let vol: i64 = coordinate_facets(&b.support, &subset)
            .iter()
            .map(|f| f.level * f.nvol as i64)
            .sum();
        total += sign(n - subset.len()) * vol;
    }
    Ok(total)
}
