//! Face functions and Newton non-degeneracy.
//!
//! A face function is quasi-homogeneous, so after a monomial change of
//! coordinates adapted to the face's direction lattice it becomes a monomial
//! times a polynomial `G` in `dim(face)` variables with no monomial factor.
//! Torus critical points of the face function correspond to torus singular
//! points of `G = 0`: repeated nonzero roots for edges, and solutions of
//! `G = G_s = G_t = 0` with `s t != 0` for 2-faces.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::field::random_prime;
use crate::algebra::{has_torus_singular_point, BPoly, Field, Fp, UPoly};
use crate::error::{Error, Result};
use crate::lattice::{self, dot, saturated_basis, Point};
use crate::newton::{newton_boundary, Face, NewtonBoundary};
use crate::poly::{rat, Monomial, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct FaceFunction {
    pub face: Face,
    pub poly: Polynomial,
}

/// The terms of `g` on `face`.
pub fn face_function(g: &Polynomial, face: &Face) -> Result<FaceFunction> {
    let a = &face.normal.entries;
    let support = g.support();
    let on_face: Vec<&Point> = support
        .iter()
        .filter(|p| dot(a, p) == face.normal.level)
        .collect();
    let below = support.iter().any(|p| dot(a, p) < face.normal.level);
    let mut expected = face.support_points.clone();
    expected.sort();
    let mut found: Vec<Point> = on_face.into_iter().cloned().collect();
    found.sort();
    if below || found != expected || a.len() != g.nvars() {
        return Err(Error::FaceNotOnBoundary);
    }
    let poly = g.filter_terms(|m| dot(a, &m.as_point()) == face.normal.level);
    Ok(FaceFunction {
        face: face.clone(),
        poly,
    })
}

/// `poly` in lattice coordinates of the face with its monomial factor removed;
/// the face function equals `z^factor * poly(z^{basis_1}, ..., z^{basis_k})`.
#[derive(Clone, Debug, PartialEq)]
pub struct ToricReduction {
    pub poly: Polynomial,
    pub factor: Point,
    pub basis: Vec<Point>,
}

pub fn toric_reduce(ff: &FaceFunction) -> ToricReduction {
    let terms: Vec<(Point, Rational)> = ff
        .poly
        .terms()
        .map(|(m, c)| (m.as_point(), c.clone()))
        .collect();
    let n = ff.poly.nvars();
    let p0 = terms[0].0.clone();
    let diffs: Vec<Point> = terms.iter().map(|(p, _)| lattice::sub(p, &p0)).collect();
    let basis = saturated_basis(&diffs, n);
    let k = basis.len();
    let coords: Vec<Point> = diffs
        .iter()
        .map(|d| lattice::coordinates(&basis, d))
        .collect();
    let mins: Vec<i64> = (0..k)
        .map(|j| coords.iter().map(|c| c[j]).min().unwrap())
        .collect();
    let mut poly = Polynomial::zero(k);
    for (c, (_, coeff)) in coords.iter().zip(&terms) {
        let e = c.iter().zip(&mins).map(|(x, m)| (x - m) as u32).collect();
        poly.add_term(Monomial(e), coeff.clone());
    }
    let mut factor = p0;
    for (b, m) in basis.iter().zip(&mins) {
        for (f, x) in factor.iter_mut().zip(b) {
            *f += m * x;
        }
    }
    ToricReduction {
        poly,
        factor,
        basis,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RandomizedConfig {
    pub seed: u64,
    pub prime_bits: u32,
    pub trials: u32,
}

impl Default for RandomizedConfig {
    fn default() -> Self {
        RandomizedConfig {
            seed: 0,
            prime_bits: 61,
            trials: 3,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Randomized(RandomizedConfig),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    NonDegenerate,
    Degenerate,
    /// Outcome of a majority vote over random prime fields.
    Probabilistic {
        nondegenerate: bool,
        trials: u32,
        agreeing: u32,
        prime_bits: u32,
    },
}

impl Verdict {
    pub fn is_nondegenerate(&self) -> bool {
        match self {
            Verdict::NonDegenerate => true,
            Verdict::Degenerate => false,
            Verdict::Probabilistic { nondegenerate, .. } => *nondegenerate,
        }
    }
}

/// Torus singularity test for a reduced face polynomial over the field of `unit`.
fn reduced_is_degenerate<F: Field, C>(reduced: &Polynomial, unit: &F, conv: C, lambdas: &[F]) -> Option<bool>
where
    C: Fn(&Rational) -> Option<F>,
{
    match reduced.nvars() {
        0 => Some(false),
        1 => {
            let mut coeffs = vec![unit.zero_like(); reduced.total_degree().unwrap_or(0) as usize + 1];
            for (m, c) in reduced.terms() {
                coeffs[m.exponents()[0] as usize] = conv(c)?;
            }
            let u = UPoly::new(unit, coeffs);
            Some(!u.is_squarefree())
        }
        2 => {
            let g = BPoly::from_polynomial(reduced, unit, conv)?;
            has_torus_singular_point(&g, lambdas)
        }
        _ => unreachable!("faces of dimension at most 2"),
    }
}

fn exact_degenerate(reduced: &Polynomial) -> bool {
    let count = reduced.total_degree().unwrap_or(0) as i64 + 2;
    let lambdas: Vec<Rational> = (0..count).map(rat).collect();
    reduced_is_degenerate(reduced, &rat(1), |c| Some(c.clone()), &lambdas)
        .expect("some shear parameter separates the components")
}

fn modular_degenerate(reduced: &Polynomial, rng: &mut ChaCha8Rng, bits: u32) -> bool {
    loop {
        let p = random_prime(rng, bits);
        let unit = Fp::new(1, p);
        let count = reduced.total_degree().unwrap_or(0) as usize + 2;
        let lambdas: Vec<Fp> = (0..count).map(|_| Fp::new(rng.gen_range(0..p), p)).collect();
        if let Some(v) = reduced_is_degenerate(reduced, &unit, |c| Fp::from_rational(c, p), &lambdas) {
            return v;
        }
    }
}

/// Non-degeneracy of `g` on a compact face of its Newton boundary.
pub fn is_nondegenerate_on_face(g: &Polynomial, face: &Face, mode: &Mode) -> Result<Verdict> {
    assert!(
        face.normal.entries.iter().all(|&a| a > 0) && face.normal.level > 0,
        "compact faces have positive weighted degree"
    );
    let ff = face_function(g, face)?;
    if face.dim == 0 {
        return Ok(Verdict::NonDegenerate);
    }
    let reduced = toric_reduce(&ff).poly;
    Ok(match mode {
        Mode::Exact => {
            if exact_degenerate(&reduced) {
                Verdict::Degenerate
            } else {
                Verdict::NonDegenerate
            }
        }
        Mode::Randomized(cfg) => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let trials = cfg.trials.max(1);
            let nd_votes = (0..trials)
                .filter(|_| !modular_degenerate(&reduced, &mut rng, cfg.prime_bits))
                .count() as u32;
            let nondegenerate = 2 * nd_votes > trials;
            Verdict::Probabilistic {
                nondegenerate,
                trials,
                agreeing: if nondegenerate { nd_votes } else { trials - nd_votes },
                prime_bits: cfg.prime_bits,
            }
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceVerdict {
    pub face: usize,
    pub dim: usize,
    pub vertices: Vec<Point>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Classification {
    NewtonNonDegenerate,
    /// Non-degenerate on every face except the distinguished facet.
    WeaklyAlmostNonDegenerate { facet: usize },
    Degenerate { faces: Vec<usize> },
}

#[derive(Clone, Debug, Serialize)]
pub struct DegeneracyReport {
    pub boundary: NewtonBoundary,
    pub verdicts: Vec<FaceVerdict>,
    pub classification: Classification,
    pub distinguished: Option<usize>,
}

impl DegeneracyReport {
    /// Non-degenerate on every face other than the distinguished one.
    pub fn in_w_gamma(&self) -> bool {
        self.verdicts
            .iter()
            .all(|v| Some(v.face) == self.distinguished || v.verdict.is_nondegenerate())
    }

    pub fn verdict_for(&self, vertices: &[Point]) -> Option<&Verdict> {
        let i = self.boundary.faces.iter().position(|f| f.same_vertices(vertices))?;
        self.verdicts.iter().find(|v| v.face == i).map(|v| &v.verdict)
    }
}

/// Per-face non-degeneracy over all compact faces of `Γ(g)`.
pub fn classify(g: &Polynomial, distinguished: Option<&[Point]>, mode: &Mode) -> Result<DegeneracyReport> {
    let boundary = newton_boundary(g)?;
    let top = g.nvars().saturating_sub(1);
    let distinguished = match distinguished {
        None => None,
        Some(vs) => Some(
            boundary
                .faces
                .iter()
                .position(|f| f.dim == top && f.same_vertices(vs))
                .ok_or(Error::FaceNotOnBoundary)?,
        ),
    };
    let mut verdicts = Vec::with_capacity(boundary.faces.len());
    for (i, face) in boundary.faces.iter().enumerate() {
        verdicts.push(FaceVerdict {
            face: i,
            dim: face.dim,
            vertices: face.vertices.clone(),
            verdict: is_nondegenerate_on_face(g, face, mode)?,
        });
    }
    let bad: Vec<usize> = verdicts
        .iter()
        .filter(|v| !v.verdict.is_nondegenerate())
        .map(|v| v.face)
        .collect();
    let classification = match (bad.as_slice(), distinguished) {
        ([], _) => Classification::NewtonNonDegenerate,
        ([only], Some(d)) if *only == d => Classification::WeaklyAlmostNonDegenerate { facet: d },
        _ => Classification::Degenerate { faces: bad },
    };
    Ok(DegeneracyReport {
        boundary,
        verdicts,
        classification,
        distinguished,
    })
}

/// Convenience: Newton non-degenerate on every compact face (exact).
pub fn is_newton_nondegenerate(g: &Polynomial) -> Result<bool> {
    Ok(classify(g, None, &Mode::Exact)?.classification == Classification::NewtonNonDegenerate)
}

/// Restriction of a face's lattice reduction to a monomial-free polynomial has
/// a nonzero constant term only if the face is a vertex.
pub fn reduced_constant(ff: &FaceFunction) -> Option<Rational> {
    let r = toric_reduce(ff);
    (r.poly.is_constant()).then(|| r.poly.constant_term()).filter(|c| !Zero::is_zero(c))
}
