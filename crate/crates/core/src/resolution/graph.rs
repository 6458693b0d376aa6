//! Decorated dual graphs of the resolution of a family member.
//!
//! First stage (toric modification by the fixed fan): `E(P)` is the curve
//! `C`, `E(Q)` is a rational curve cut out by the face with weight `Q`, and
//! `E(R)` has one rational component per root of `h`. Each singular point of
//! `C` is replaced by a catalogue patch. Self-intersections come from the
//! Laufer relation `(z2)·E = 0` applied to the divisor of `z2`, whose strict
//! transform contributes one leaf per branch of `{z2 = 0} ∩ V`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::catalog::Catalog;
use crate::error::{Error, Result};
use crate::family::{family_facets, FamilyMember, SingularPointCertificate};
use crate::newton::{interior_lattice_points, newton_boundary};
use crate::poly::{Monomial, Polynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Exceptional,
    /// A branch of the strict transform of the test function's zero set.
    StrictTransform,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorNode {
    pub name: String,
    pub kind: NodeKind,
    pub components: u32,
    pub genus: Option<i64>,
    pub euler: Option<i64>,
    /// Order of `z2` along the divisor.
    pub multiplicity: u32,
    pub self_intersection: Option<i64>,
}

impl DivisorNode {
    fn exceptional(name: impl Into<String>, genus: Option<i64>, multiplicity: u32) -> Self {
        DivisorNode {
            name: name.into(),
            kind: NodeKind::Exceptional,
            components: 1,
            genus,
            euler: genus.map(|g| 2 - 2 * g),
            multiplicity,
            self_intersection: None,
        }
    }

    fn leaf(name: impl Into<String>) -> Self {
        DivisorNode {
            name: name.into(),
            kind: NodeKind::StrictTransform,
            components: 1,
            genus: None,
            euler: None,
            multiplicity: 1,
            self_intersection: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DualGraph {
    pub nodes: Vec<DivisorNode>,
    /// `(i, j, count)` with `i < j`, one entry per adjacent pair.
    pub edges: Vec<(usize, usize, u32)>,
}

impl DualGraph {
    pub fn add_node(&mut self, node: DivisorNode) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize, count: u32) {
        if count == 0 {
            return;
        }
        assert_ne!(a, b, "self-intersections are node decorations");
        let (a, b) = (a.min(b), a.max(b));
        match self.edges.iter_mut().find(|e| e.0 == a && e.1 == b) {
            Some(e) => e.2 += count,
            None => self.edges.push((a, b, count)),
        }
    }

    pub fn intersection(&self, a: usize, b: usize) -> u32 {
        let (a, b) = (a.min(b), a.max(b));
        self.edges
            .iter()
            .find(|e| e.0 == a && e.1 == b)
            .map_or(0, |e| e.2)
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.name == name)
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b, _) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph resolution {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let mut label = n.name.clone();
            if let Some(g) = n.genus {
                let _ = write!(label, "\\ng={g}");
            }
            if let Some(s) = n.self_intersection {
                let _ = write!(label, "\\ne={s}");
            }
            let _ = write!(label, "\\nm={}", n.multiplicity);
            let shape = match n.kind {
                NodeKind::Exceptional => "ellipse",
                NodeKind::StrictTransform => "box",
            };
            let _ = writeln!(out, "  n{i} [label=\"{label}\", shape={shape}];");
        }
        for &(a, b, c) in &self.edges {
            let _ = writeln!(out, "  n{a} -- n{b} [label=\"{c}\"];");
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LauferReport {
    /// `Σ_ℓ m_ℓ (E_ℓ · E_k)` for every exceptional node `k`.
    pub residuals: Vec<(String, i64)>,
    pub all_zero: bool,
}

fn laufer_sum(g: &DualGraph, k: usize) -> i64 {
    g.edges
        .iter()
        .filter_map(|&(a, b, c)| {
            let other = if a == k {
                b
            } else if b == k {
                a
            } else {
                return None;
            };
            Some(g.nodes[other].multiplicity as i64 * c as i64)
        })
        .sum()
}

/// Fill self-intersections of exceptional nodes from `(z2) · E_k = 0`, then
/// report the residuals of the relation.
pub fn self_intersections_and_laufer(graph: &DualGraph) -> Result<(DualGraph, LauferReport)> {
    let mut g = graph.clone();
    for k in 0..g.nodes.len() {
        if g.nodes[k].kind != NodeKind::Exceptional {
            continue;
        }
        let m = g.nodes[k].multiplicity as i64;
        if m == 0 {
            return Err(Error::Graph(format!("{} has no multiplicity", g.nodes[k].name)));
        }
        let s = laufer_sum(&g, k);
        if s % m != 0 {
            return Err(Error::Graph(format!(
                "self-intersection of {} is not integral ({}/{m})",
                g.nodes[k].name, -s
            )));
        }
        g.nodes[k].self_intersection = Some(-s / m);
    }
    let residuals: Vec<(String, i64)> = (0..g.nodes.len())
        .filter(|&k| g.nodes[k].kind == NodeKind::Exceptional)
        .map(|k| {
            let n = &g.nodes[k];
            let e2 = n.self_intersection.unwrap_or(0);
            (n.name.clone(), n.multiplicity as i64 * e2 + laufer_sum(&g, k))
        })
        .collect();
    let all_zero = residuals.iter().all(|(_, r)| *r == 0);
    Ok((g, LauferReport { residuals, all_zero }))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Decoration {
    kind: NodeKind,
    genus: Option<i64>,
    self_intersection: Option<i64>,
    multiplicity: Option<u32>,
    incident: Vec<u32>,
}

fn decorations(g: &DualGraph, with_multiplicity: bool) -> Vec<Decoration> {
    (0..g.nodes.len())
        .map(|k| {
            let n = &g.nodes[k];
            let mut incident: Vec<u32> = g
                .edges
                .iter()
                .filter(|e| e.0 == k || e.1 == k)
                .map(|e| e.2)
                .collect();
            incident.sort();
            Decoration {
                kind: n.kind,
                genus: n.genus,
                self_intersection: n.self_intersection,
                multiplicity: with_multiplicity.then_some(n.multiplicity),
                incident,
            }
        })
        .collect()
}

type Consistent<'a> = dyn Fn(usize, usize, &[Option<usize>]) -> bool + 'a;

/// Isomorphism of decorated graphs (kind, genus, self-intersection, optionally
/// multiplicity, and intersection counts).
pub fn graphs_isomorphic(a: &DualGraph, b: &DualGraph, with_multiplicity: bool) -> bool {
    let n = a.nodes.len();
    if n != b.nodes.len() || a.edges.len() != b.edges.len() {
        return false;
    }
    let da = decorations(a, with_multiplicity);
    let db = decorations(b, with_multiplicity);
    let mut sa = da.clone();
    let mut sb = db.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return false;
    }
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| da[i] == db[j]).collect())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| candidates[i].len());
    let adj_a: HashMap<(usize, usize), u32> = a.edges.iter().map(|&(x, y, c)| ((x, y), c)).collect();
    let adj_b: HashMap<(usize, usize), u32> = b.edges.iter().map(|&(x, y, c)| ((x, y), c)).collect();
    let count = |adj: &HashMap<(usize, usize), u32>, x: usize, y: usize| {
        adj.get(&(x.min(y), x.max(y))).copied().unwrap_or(0)
    };
    fn search(
        depth: usize,
        order: &[usize],
        candidates: &[Vec<usize>],
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        consistent: &Consistent,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let i = order[depth];
        for &j in &candidates[i] {
            if used[j] || !consistent(i, j, map) {
                continue;
            }
            map[i] = Some(j);
            used[j] = true;
            if search(depth + 1, order, candidates, map, used, consistent) {
                return true;
            }
            map[i] = None;
            used[j] = false;
        }
        false
    }
    let consistent = |i: usize, j: usize, map: &[Option<usize>]| {
        map.iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|y| (x, y)))
            .all(|(x, y)| count(&adj_a, i, x) == count(&adj_b, j, y))
    };
    let mut map = vec![None; n];
    let mut used = vec![false; n];
    search(0, &order, &candidates, &mut map, &mut used, &consistent)
}

/// An irreducible component of `C` (or the unsplit remainder of `f`).
#[derive(Clone, Debug, PartialEq)]
struct CurveComponent {
    poly: Polynomial,
    degree: u32,
    is_line: bool,
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let sq = |n: &BigInt| {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    };
    Some(Rational::new(sq(r.numer())?, sq(r.denom())?))
}

/// Rational linear factors `α v2 + β v3` of a binary quadratic form.
fn split_quadratic(q: &Polynomial) -> Vec<(Rational, Rational)> {
    let c = |e: [u32; 2]| q.coeff(&Monomial(e.to_vec()));
    let (a, b, cc) = (c([2, 0]), c([1, 1]), c([0, 2]));
    if a.is_zero() {
        // v3 (b v2 + c v3)
        return vec![(Rational::zero(), Rational::one()), (b, cc)];
    }
    let disc = &b * &b - Rational::from_integer(4.into()) * &a * &cc;
    match rational_sqrt(&disc) {
        // a (v2 - r1 v3)(v2 - r2 v3), r = (-b ± √disc) / 2a
        Some(s) => [&s, &-s.clone()]
            .iter()
            .map(|s| {
                let r = (-&b + *s) / (Rational::from_integer(2.into()) * &a);
                (Rational::one(), -r)
            })
            .collect(),
        None => Vec::new(),
    }
}

fn curve_components(m: &FamilyMember) -> Result<Vec<CurveComponent>> {
    let mut lines: Vec<Polynomial> = m.line_factors.clone().unwrap_or_default();
    let mut rest = m.f.clone();
    for l in &lines {
        rest = rest.div_exact(l).ok_or_else(|| Error::Graph("line factor does not divide f".into()))?;
    }
    for cert in &m.certificates {
        let shifted = local_expansion(&rest, cert);
        let low = shifted.terms().map(|(mo, _)| mo.degree()).min();
        if low != Some(2) {
            continue;
        }
        let tangent = shifted.filter_terms(|mo| mo.degree() == 2);
        for (alpha, beta) in split_quadratic(&tangent) {
            // α (z2 - ρ2 z1) + β (z3 - ρ3 z1)
            let (r2, r3) = cert.rho();
            let coeffs = [-(&alpha * r2) - &beta * r3, alpha, beta];
            let l = Polynomial::from_terms(
                3,
                (0..3).map(|i| {
                    let mut e = vec![0; 3];
                    e[i] = 1;
                    (e, coeffs[i].clone())
                }),
            );
            if let Some(q) = rest.div_exact(&l) {
                rest = q;
                lines.push(l);
            }
        }
    }
    let mut out: Vec<CurveComponent> = lines
        .into_iter()
        .map(|l| CurveComponent {
            poly: l,
            degree: 1,
            is_line: true,
        })
        .collect();
    if !rest.is_constant() {
        let degree = rest.homogeneous_degree().unwrap_or(0);
        out.push(CurveComponent {
            poly: rest,
            degree,
            is_line: false,
        });
    }
    Ok(out)
}

/// `p(1, ρ2 + v2, ρ3 + v3)` as a polynomial in `(v2, v3)`.
fn local_expansion(p: &Polynomial, cert: &SingularPointCertificate) -> Polynomial {
    let (r2, r3) = cert.rho();
    let v2 = Polynomial::var(2, 0);
    let v3 = Polynomial::var(2, 1);
    p.compose(&[
        Polynomial::one(2),
        &Polynomial::constant(2, r2.clone()) + &v2,
        &Polynomial::constant(2, r3.clone()) + &v3,
    ])
}

/// Euler characteristic of the normalization of `C`.
pub fn euler_of_e_p(d: u32, mu_tot: u32, branches: &[u32]) -> i64 {
    let d = d as i64;
    3 * d - d * d + mu_tot as i64 + branches.iter().map(|&b| b as i64 - 1).sum::<i64>()
}

/// Aggregated first- and second-stage divisors of a member.
pub fn divisor_ledger(m: &FamilyMember, catalog: &Catalog) -> Result<Vec<DivisorNode>> {
    let d = m.d;
    let comps = curve_components(m)?;
    let branches: Vec<u32> = m.certificates.iter().map(|c| c.branches).collect();
    let euler_p = euler_of_e_p(d, m.mu_tot, &branches);
    let mut nodes = vec![DivisorNode {
        name: "E(P)".into(),
        kind: NodeKind::Exceptional,
        components: comps.len() as u32,
        genus: (comps.len() == 1).then(|| (2 - euler_p) / 2),
        euler: Some(euler_p),
        multiplicity: 1,
        self_intersection: None,
    }];
    let BoundaryData { genus_q, euler_q, .. } = boundary_data(d)?;
    nodes.push(DivisorNode {
        name: "E(Q)".into(),
        kind: NodeKind::Exceptional,
        components: 1,
        genus: Some(genus_q),
        euler: Some(euler_q),
        multiplicity: 2,
        self_intersection: None,
    });
    nodes.push(DivisorNode {
        name: "E(R)".into(),
        kind: NodeKind::Exceptional,
        components: d + 3,
        genus: Some(0),
        euler: Some(2 * (d as i64 + 3)),
        multiplicity: 1,
        self_intersection: None,
    });
    for cert in &m.certificates {
        let entry = catalog.get(&cert.type_tag)?;
        for pn in &entry.nodes {
            nodes.push(DivisorNode {
                name: format!("{}@{}", pn.name, cert.label()),
                kind: NodeKind::Exceptional,
                components: 1,
                genus: Some(pn.genus),
                euler: Some(2 - 2 * pn.genus),
                multiplicity: pn.multiplicity,
                self_intersection: None,
            });
        }
    }
    Ok(nodes)
}

/// First-stage data read off the family boundary.
struct BoundaryData {
    genus_q: i64,
    euler_q: i64,
    /// Lattice length of the edge shared by the two facets, i.e. `E(P)·E(Q)`.
    shared_edge: u64,
}

/// `E(Q)`: the torus part has Euler characteristic `-NVol(Δ1)`, completed by
/// one point per lattice segment of the boundary of `Δ1`.
fn boundary_data(d: u32) -> Result<BoundaryData> {
    let (delta0, delta1) = family_facets(d);
    let b = newton_boundary(&crate::family::representative(d))?;
    let index = |verts: &[Vec<i64>]| {
        b.faces
            .iter()
            .position(|f| f.same_vertices(verts))
            .ok_or(Error::FaceNotOnBoundary)
    };
    let (i0, i1) = (index(&delta0)?, index(&delta1)?);
    let face = &b.faces[i1];
    let nvol = face.normalized_volume() as i64;
    let perimeter: i64 = b.subfaces[i1]
        .iter()
        .map(|&e| b.faces[e].lattice_length().unwrap() as i64)
        .sum();
    let shared = b.subfaces[i1]
        .iter()
        .find(|e| b.subfaces[i0].contains(e))
        .ok_or_else(|| Error::Graph("facets share no edge".into()))?;
    let euler_q = perimeter - nvol;
    let genus_q = interior_lattice_points(face)? as i64;
    if euler_q != 2 - 2 * genus_q {
        return Err(Error::Graph(format!("E(Q): Euler characteristic {euler_q} but genus {genus_q}")));
    }
    Ok(BoundaryData {
        genus_q,
        euler_q,
        shared_edge: b.faces[*shared].lattice_length().unwrap(),
    })
}

/// Number of branches of `{z2 = 0}` through a component: the roots of
/// `p(1, 0, t)`, which must be simple.
fn z2_section_roots(p: &Polynomial) -> Result<u32> {
    let s = p.compose(&[Polynomial::one(1), Polynomial::zero(1), Polynomial::var(1, 0)]);
    if !s.is_squarefree()? {
        return Err(Error::Graph("z2 = 0 is tangent to C".into()));
    }
    Ok(s.total_degree().unwrap_or(0))
}

/// The decorated dual graph of a member, with self-intersections filled in.
pub fn build_dual_graph(m: &FamilyMember, catalog: &Catalog) -> Result<DualGraph> {
    let d = m.d;
    let comps = curve_components(m)?;
    let branches: Vec<u32> = m.certificates.iter().map(|c| c.branches).collect();
    let euler_total = euler_of_e_p(d, m.mu_tot, &branches);
    let line_count = comps.iter().filter(|c| c.is_line).count() as i64;
    let mut g = DualGraph::default();

    let single = comps.len() == 1;
    let mut comp_nodes = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        let genus = if c.is_line {
            0
        } else {
            let euler = euler_total - 2 * line_count;
            if euler > 2 || euler % 2 != 0 {
                return Err(Error::Graph(format!("E(P) component with Euler characteristic {euler}")));
            }
            (2 - euler) / 2
        };
        let name = if single { "E(P)".to_string() } else { format!("E(P)#{}", i + 1) };
        comp_nodes.push(g.add_node(DivisorNode::exceptional(name, Some(genus), 1)));
    }
    let bd = boundary_data(d)?;
    if comps.iter().map(|c| c.degree as u64).sum::<u64>() != bd.shared_edge {
        return Err(Error::Graph("E(P)·E(Q) differs from the shared edge length".into()));
    }
    let eq = g.add_node(DivisorNode::exceptional("E(Q)", Some(bd.genus_q), 2));
    for (c, &node) in comps.iter().zip(&comp_nodes) {
        g.add_edge(node, eq, c.degree);
    }
    for k in 1..=d + 3 {
        let r = g.add_node(DivisorNode::exceptional(format!("E(R)#{k}"), Some(0), 1));
        g.add_edge(eq, r, 1);
    }

    // second stage: per-point branch counts on each component
    let mut pair_meetings: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for cert in &m.certificates {
        let entry = catalog.get(&cert.type_tag)?;
        if entry.requires_h_nonzero && m.h.evaluate(&cert.point)?.is_zero() {
            return Err(Error::Uncatalogued(format!("{} on h = 0 at {}", cert.type_tag, cert.label())));
        }
        if cert.point[1].is_zero() || cert.point[2].is_zero() {
            return Err(Error::Graph(format!("{} lies on a coordinate line", cert.label())));
        }
        if entry.branch_attachments.len() != cert.branches as usize {
            return Err(Error::Graph(format!(
                "catalog entry {} expects {} branches, certificate at {} has {}",
                entry.type_tag,
                entry.branch_attachments.len(),
                cert.label(),
                cert.branches
            )));
        }
        let mut per_comp: Vec<u32> = comps
            .iter()
            .map(|c| u32::from(c.is_line && c.poly.evaluate(&cert.point).map(|v| v.is_zero()).unwrap_or(false)))
            .collect();
        let on_lines: u32 = per_comp.iter().sum();
        if let Some(rest) = comps.iter().position(|c| !c.is_line) {
            if comps[rest].poly.evaluate(&cert.point)?.is_zero() {
                per_comp[rest] = cert.branches.saturating_sub(on_lines);
            }
        }
        if per_comp.iter().sum::<u32>() != cert.branches {
            return Err(Error::Graph(format!("branches at {} do not match the components of C", cert.label())));
        }
        let base = g.nodes.len();
        for pn in &entry.nodes {
            g.add_node(DivisorNode::exceptional(
                format!("{}@{}", pn.name, cert.label()),
                Some(pn.genus),
                pn.multiplicity,
            ));
        }
        for &(a, b, c) in &entry.internal_edges {
            g.add_edge(base + a, base + b, c);
        }
        let mut slot = 0;
        for (ci, &count) in per_comp.iter().enumerate() {
            for _ in 0..count {
                g.add_edge(base + entry.branch_attachments[slot], comp_nodes[ci], 1);
                slot += 1;
            }
        }
        for i in 0..comps.len() {
            for j in i + 1..comps.len() {
                *pair_meetings.entry((i, j)).or_default() += (per_comp[i] * per_comp[j]) as i64;
            }
        }
    }
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            let bezout = (comps[i].degree * comps[j].degree) as i64;
            let resolved = pair_meetings.get(&(i, j)).copied().unwrap_or(0);
            if bezout != resolved {
                return Err(Error::Graph(format!(
                    "components {} and {} of C meet at uncertified points",
                    i + 1,
                    j + 1
                )));
            }
        }
    }

    // strict transform of {z2 = 0}: one branch per root of f(1, 0, t), one at E(Q)
    let mut leaf = 0;
    for (c, &node) in comps.iter().zip(&comp_nodes) {
        let roots = z2_section_roots(&c.poly)?;
        if roots != c.degree {
            return Err(Error::Graph("z2 = 0 is not transverse to C".into()));
        }
        for _ in 0..roots {
            leaf += 1;
            let s = g.add_node(DivisorNode::leaf(format!("S#{leaf}")));
            g.add_edge(s, node, 1);
        }
    }
    leaf += 1;
    let s = g.add_node(DivisorNode::leaf(format!("S#{leaf}")));
    g.add_edge(s, eq, 1);

    let (filled, report) = self_intersections_and_laufer(&g)?;
    if !report.all_zero {
        return Err(Error::Graph("Laufer relation violated".into()));
    }
    for cert in &m.certificates {
        let entry = catalog.get(&cert.type_tag)?;
        for pn in &entry.nodes {
            let idx = filled.find(&format!("{}@{}", pn.name, cert.label())).unwrap();
            if filled.nodes[idx].self_intersection != Some(pn.self_intersection) {
                return Err(Error::Graph(format!(
                    "{} at {}: catalogue self-intersection {} disagrees with {:?}",
                    pn.name,
                    cert.label(),
                    pn.self_intersection,
                    filled.nodes[idx].self_intersection
                )));
            }
        }
    }
    Ok(filled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::catalog::builtin_catalog;

    fn chain() -> DualGraph {
        let mut g = DualGraph::default();
        let e1 = g.add_node(DivisorNode::exceptional("E1", Some(0), 1));
        let e2 = g.add_node(DivisorNode::exceptional("E2", Some(0), 2));
        let s = g.add_node(DivisorNode::leaf("S"));
        g.add_edge(e1, e2, 1);
        g.add_edge(s, e2, 1);
        g
    }

    #[test]
    fn laufer_on_two_node_chain() {
        let (g, report) = self_intersections_and_laufer(&chain()).unwrap();
        assert_eq!(g.nodes[0].self_intersection, Some(-2));
        assert_eq!(g.nodes[1].self_intersection, Some(-1));
        assert!(report.all_zero);
    }

    #[test]
    fn non_integral_self_intersection() {
        let mut g = DualGraph::default();
        let e = g.add_node(DivisorNode::exceptional("E", Some(0), 2));
        let s = g.add_node(DivisorNode::leaf("S"));
        g.add_edge(e, s, 1);
        assert!(matches!(self_intersections_and_laufer(&g), Err(Error::Graph(_))));
    }

    #[test]
    fn isomorphism_under_permutation_and_decoration_change() {
        let (a, _) = self_intersections_and_laufer(&chain()).unwrap();
        let mut b = DualGraph::default();
        let s = b.add_node(DivisorNode::leaf("S"));
        let e2 = b.add_node(DivisorNode::exceptional("F2", Some(0), 2));
        let e1 = b.add_node(DivisorNode::exceptional("F1", Some(0), 1));
        b.add_edge(e2, s, 1);
        b.add_edge(e2, e1, 1);
        let (b, _) = self_intersections_and_laufer(&b).unwrap();
        assert!(graphs_isomorphic(&a, &b, true));
        let mut c = b.clone();
        c.nodes[2].self_intersection = Some(-3);
        assert!(!graphs_isomorphic(&a, &c, true));
    }

    #[test]
    fn quadratic_splitting() {
        // (v2 - 2 v3)(3 v2 - 4 v3) = 3 v2^2 - 10 v2 v3 + 8 v3^2
        let q = Polynomial::from_int_terms(2, &[(&[2, 0], 3), (&[1, 1], -10), (&[0, 2], 8)]);
        assert_eq!(split_quadratic(&q).len(), 2);
        let irreducible = Polynomial::from_int_terms(2, &[(&[2, 0], 1), (&[0, 2], 1)]);
        assert!(split_quadratic(&irreducible).is_empty());
    }

    #[test]
    fn ledger_for_smooth_conic() {
        let f = Polynomial::from_int_terms(3, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], 1)]);
        let h = Polynomial::from_int_terms(3, &[(&[0, 5, 0], 1), (&[0, 0, 5], 1)]);
        let m = crate::family::build_member(f, h, Polynomial::zero(3), vec![]).unwrap();
        let ledger = divisor_ledger(&m, &builtin_catalog()).unwrap();
        assert_eq!(ledger[0].euler, Some(2));
        assert_eq!(ledger[0].genus, Some(0));
        assert_eq!(ledger[1].genus, Some(0));
        assert_eq!(ledger[2].components, 5);
        let g = build_dual_graph(&m, &builtin_catalog()).unwrap();
        assert_eq!(g.nodes[g.find("E(P)").unwrap()].self_intersection, Some(-6));
        assert_eq!(g.nodes[g.find("E(Q)").unwrap()].self_intersection, Some(-4));
        assert_eq!(g.nodes[g.find("E(R)#1").unwrap()].self_intersection, Some(-2));
        assert!(g.is_connected());
        assert!(g.to_dot().starts_with("graph resolution {"));
    }

    fn lin(c: [i64; 3]) -> Polynomial {
        Polynomial::from_int_terms(3, &[(&[1, 0, 0], c[0]), (&[0, 1, 0], c[1]), (&[0, 0, 1], c[2])])
    }

    fn h(sign: i64) -> Polynomial {
        Polynomial::from_int_terms(3, &[(&[0, 5, 0], 1), (&[0, 0, 5], sign)])
    }

    fn nodal_member(sign: i64) -> FamilyMember {
        let f = &lin([1, 1, -2]) * &lin([1, 3, -4]);
        let cert = SingularPointCertificate {
            point: [Rational::one(), Rational::one(), Rational::one()],
            local_milnor: 1,
            branches: 2,
            local_normal_form: Polynomial::from_int_terms(2, &[(&[2, 0], 1), (&[0, 2], 1)]),
            type_tag: "A1".into(),
            coordinate_change: None,
        };
        crate::family::build_member(f, h(sign), Polynomial::zero(3), vec![cert]).unwrap()
    }

    fn distinct_roots(p: &Polynomial, var: usize) -> u32 {
        let u = p.project(&[var]).expect("univariate");
        assert!(u.is_squarefree().unwrap());
        u.total_degree().unwrap()
    }

    #[test]
    fn nodal_pair_graphs_agree() {
        let cat = builtin_catalog();
        let g0 = build_dual_graph(&nodal_member(1), &cat).unwrap();
        // two lines, one node: 2 + 1 + 5 + 1 + 3 leaves
        assert_eq!(g0.nodes.len(), 12);
        let ep = g0.find("E(P)#1").unwrap();
        assert_eq!(g0.nodes[ep].self_intersection, Some(-5));
        assert_eq!(g0.nodes[g0.find("E(Q)").unwrap()].self_intersection, Some(-4));
        assert_eq!(g0.nodes[g0.find("E(A1)@[1:1:1]").unwrap()].self_intersection, Some(-1));
        assert!(g0.is_connected());
        let other = crate::family::build_line_arrangement(
            vec![lin([1, 2, -3]), lin([1, -1, -2])],
            h(1),
            Polynomial::zero(3),
        )
        .unwrap();
        assert_eq!(other.certificates[0].label(), "[7:1:3]");
        let g = build_dual_graph(&other, &cat).unwrap();
        assert!(graphs_isomorphic(&g0, &g, true));
    }

    #[test]
    fn node_on_h_is_uncatalogued() {
        let err = build_dual_graph(&nodal_member(-1), &builtin_catalog()).unwrap_err();
        assert!(matches!(err, Error::Uncatalogued(_)));
    }

    #[test]
    fn chart_counts() {
        use crate::resolution::fan::{chart_pullback, sigma_star};
        let fan = sigma_star();
        let g = nodal_member(1).g;
        let zero = Polynomial::zero(3);
        // E(R) ∩ strict transform: roots of h
        let c = chart_pullback(&fan, &g, &["e1", "R", "e2"]).unwrap();
        assert_eq!(c.orders[1], ("R".to_string(), 5));
        let on_r = c.strict_transform.substitute(1, &zero).substitute(0, &zero);
        assert_eq!(distinct_roots(&on_r, 2), 5);
        // E(P) ∩ E(Q): roots of f on the line z3 = z1
        let c = chart_pullback(&fan, &g, &["Q", "P", "e2"]).unwrap();
        let pq = c.strict_transform.substitute(0, &zero).substitute(1, &zero);
        assert_eq!(distinct_roots(&pq, 2), 2);
        // E(Q) ∩ E(R): d + 3 points, one per component of E(R)
        let c = chart_pullback(&fan, &g, &["R", "Q", "e2"]).unwrap();
        let qr = c.strict_transform.substitute(0, &zero).substitute(1, &zero);
        assert_eq!(distinct_roots(&qr, 2), 5);
    }

    #[test]
    fn first_stage_boundary_data() {
        for d in 2..=5 {
            let bd = boundary_data(d).unwrap();
            assert_eq!((bd.genus_q, bd.euler_q), (0, 2));
            assert_eq!(bd.shared_edge, d as u64);
        }
    }

    #[test]
    fn euler_formula_instance() {
        assert_eq!(euler_of_e_p(2, 1, &[2]), 4);
    }
}
