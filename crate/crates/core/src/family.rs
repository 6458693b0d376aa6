//! The family `g = z1^2 f(z1,z2,z3) + h(z2,z3)` with `f` homogeneous of
//! degree `d` and `h` homogeneous of degree `d+3`: validation, assumption
//! checks, generic plane sections, local pullback models at the singular
//! points of `C = {f = 0}` and assembly of the monodromy zeta-function.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::degeneracy::{classify, Classification, Mode};
use crate::error::{Error, Result};
use crate::lattice::{dot, Point};
use crate::newton::{newton_boundary, newton_number, NewtonBoundary};
use crate::poly::{Monomial, Polynomial, Rational};
use crate::zeta::{varchenko_zeta, ZetaFunction};

/// A verified singular point of `C` in the chart `z1 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularPointCertificate {
    /// `(1, ρ2, ρ3)`.
    pub point: [Rational; 3],
    pub local_milnor: u32,
    pub branches: u32,
    /// Newton non-degenerate normal form in two variables `(v2, v3)`.
    pub local_normal_form: Polynomial,
    pub type_tag: String,
    /// Matrix `A` with `(z2 - ρ2, z3 - ρ3) = A (v2, v3)`; identity when absent.
    pub coordinate_change: Option<[[Rational; 2]; 2]>,
}

impl SingularPointCertificate {
    pub fn rho(&self) -> (&Rational, &Rational) {
        (&self.point[1], &self.point[2])
    }

    pub fn label(&self) -> String {
        projective_label(&self.point)
    }
}

/// Primitive integer representative, e.g. `[7:1:3]` for `(1, 1/7, 3/7)`.
pub fn projective_label(p: &[Rational]) -> String {
    let lcm = p
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g };
    let parts: Vec<String> = ints.iter().map(|x| (x / &g).to_string()).collect();
    format!("[{}]", parts.join(":"))
}

/// Rescale projective coordinates to the chart `z1 = 1`.
pub fn chart_normalize(p: &[Rational; 3]) -> Result<[Rational; 3]> {
    if p[0].is_zero() {
        return Err(Error::Certificate {
            point: projective_label(p),
            reason: "point lies on z1 = 0, outside the chart z1 = 1".into(),
        });
    }
    let x = p[0].clone();
    Ok([Rational::one(), &p[1] / &x, &p[2] / &x])
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyMember {
    pub name: Option<String>,
    pub f: Polynomial,
    pub h: Polynomial,
    pub d: u32,
    pub extra_terms: Polynomial,
    pub g: Polynomial,
    pub certificates: Vec<SingularPointCertificate>,
    pub mu_tot: u32,
    /// Linear factors of `f`, when it was entered as a line arrangement.
    pub line_factors: Option<Vec<Polynomial>>,
}

/// Vertices of the two compact facets of the family boundary.
pub fn family_facets(d: u32) -> (Vec<Point>, Vec<Point>) {
    let d = d as i64;
    let delta0 = vec![vec![d + 2, 0, 0], vec![2, d, 0], vec![2, 0, d]];
    let delta1 = vec![vec![2, d, 0], vec![2, 0, d], vec![0, d + 3, 0], vec![0, 0, d + 3]];
    (delta0, delta1)
}

/// `z1^2 f + h` for the simplest admissible data; a Newton non-degenerate
/// representative of the family boundary.
pub fn representative(d: u32) -> Polynomial {
    let t = |e: [u32; 3]| Polynomial::term(Monomial(e.to_vec()), Rational::one());
    let mut g = Polynomial::zero(3);
    for e in [[d + 2, 0, 0], [2, d, 0], [2, 0, d], [0, d + 3, 0], [0, 0, d + 3]] {
        g = &g + &t(e);
    }
    g
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidMember(msg.into())
}

fn pure_power(nvars: usize, i: usize, e: u32) -> Monomial {
    let mut v = vec![0; nvars];
    v[i] = e;
    Monomial(v)
}

/// Add `v_i^N` for each axis the support misses, `N = μ + 2` (beyond the
/// determinacy degree, so the singularity type is unchanged).
pub fn convenient_completion(p: &Polynomial, mu: u32) -> Polynomial {
    let n = p.nvars();
    let mut out = p.clone();
    for i in 0..n {
        let on_axis = p
            .terms()
            .any(|(m, _)| m.exponents()[i] > 0 && (0..n).all(|j| j == i || m.exponents()[j] == 0));
        if !on_axis {
            out.add_term(pure_power(n, i, mu + 2), Rational::one());
        }
    }
    out
}

fn certificate_error(cert: &SingularPointCertificate, reason: impl Into<String>) -> Error {
    Error::Certificate {
        point: cert.label(),
        reason: reason.into(),
    }
}

pub fn verify_certificate(f: &Polynomial, cert: &SingularPointCertificate) -> Result<()> {
    let p = &cert.point;
    if !p[0].is_one() {
        return Err(certificate_error(cert, "point is not chart-normalized"));
    }
    if !f.evaluate(p)?.is_zero() {
        return Err(certificate_error(cert, "f does not vanish"));
    }
    for i in 0..3 {
        if !f.derivative(i)?.evaluate(p)?.is_zero() {
            return Err(certificate_error(cert, format!("df/dz{} does not vanish", i + 1)));
        }
    }
    if cert.local_milnor == 0 || cert.branches == 0 {
        return Err(certificate_error(cert, "Milnor number and branch count must be positive"));
    }
    let nf = &cert.local_normal_form;
    if nf.nvars() != 2 || nf.is_zero() || !nf.constant_term().is_zero() {
        return Err(certificate_error(cert, "normal form must be a nonzero germ in v2, v3"));
    }
    if let Some(a) = &cert.coordinate_change {
        let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
        if det.is_zero() {
            return Err(certificate_error(cert, "coordinate change is singular"));
        }
    }
    let completed = convenient_completion(nf, cert.local_milnor);
    let report = classify(&completed, None, &Mode::Exact)?;
    if report.classification != Classification::NewtonNonDegenerate {
        return Err(certificate_error(cert, "normal form is Newton degenerate"));
    }
    let nu = newton_number(&report.boundary)?;
    if nu != cert.local_milnor as i64 {
        return Err(certificate_error(
            cert,
            format!("normal form has Newton number {nu}, certificate claims {}", cert.local_milnor),
        ));
    }
    Ok(())
}

/// Validate the data and assemble `g = z1^2 f + h + extra_terms`.
pub fn build_member(
    f: Polynomial,
    h: Polynomial,
    extra_terms: Polynomial,
    certificates: Vec<SingularPointCertificate>,
) -> Result<FamilyMember> {
    if f.nvars() != 3 || h.nvars() != 3 || extra_terms.nvars() != 3 {
        return Err(invalid("f, h and extra terms must be polynomials in z1, z2, z3"));
    }
    let d = f
        .homogeneous_degree()
        .ok_or_else(|| invalid("f must be a nonzero homogeneous polynomial"))?;
    if d < 2 {
        return Err(invalid(format!("f has degree {d}, need at least 2")));
    }
    for i in 0..3 {
        if f.coeff(&pure_power(3, i, d)).is_zero() {
            return Err(invalid(format!("f has no z{}^{d} term", i + 1)));
        }
    }
    if !f.is_squarefree()? {
        return Err(invalid("f is not square-free"));
    }
    if h.involves(0) {
        return Err(invalid("h must not involve z1"));
    }
    if h.homogeneous_degree() != Some(d + 3) {
        return Err(invalid(format!("h must be homogeneous of degree {}", d + 3)));
    }
    for i in [1, 2] {
        if h.coeff(&pure_power(3, i, d + 3)).is_zero() {
            return Err(invalid(format!("h has no z{}^{} term", i + 1, d + 3)));
        }
    }
    let z1sq = Polynomial::term(pure_power(3, 0, 2), Rational::one());
    let principal = &(&z1sq * &f) + &h;
    let b = newton_boundary(&principal)?;
    for (m, _) in extra_terms.terms() {
        let p = m.as_point();
        if b.facets().any(|fc| dot(&fc.normal.entries, &p) <= fc.normal.level) {
            return Err(invalid(format!("extra term {} is not strictly above the boundary", m_label(m))));
        }
    }
    let mut seen: Vec<&[Rational; 3]> = Vec::new();
    for cert in &certificates {
        if seen.contains(&&cert.point) {
            return Err(certificate_error(cert, "duplicate certificate"));
        }
        seen.push(&cert.point);
        verify_certificate(&f, cert)?;
    }
    let mu_tot = certificates.iter().map(|c| c.local_milnor).sum();
    let g = &principal + &extra_terms;
    Ok(FamilyMember {
        name: None,
        f,
        h,
        d,
        extra_terms,
        g,
        certificates,
        mu_tot,
        line_factors: None,
    })
}

fn m_label(m: &Monomial) -> String {
    Polynomial::term(m.clone(), Rational::one()).to_string()
}

/// `f` as the product of distinct linear forms; singular points of the
/// arrangement are found as intersections of pairs of lines.
pub fn build_line_arrangement(
    lines: Vec<Polynomial>,
    h: Polynomial,
    extra_terms: Polynomial,
) -> Result<FamilyMember> {
    let certificates = discover_line_singularities(&lines)?;
    let f = lines.iter().fold(Polynomial::one(3), |acc, l| &acc * l);
    let mut m = build_member(f, h, extra_terms, certificates)?;
    m.line_factors = Some(lines);
    Ok(m)
}

fn linear_coefficients(l: &Polynomial) -> Result<[Rational; 3]> {
    if l.nvars() != 3 || l.homogeneous_degree() != Some(1) {
        return Err(invalid(format!("`{l}` is not a linear form in z1, z2, z3")));
    }
    Ok([0, 1, 2].map(|i| l.coeff(&pure_power(3, i, 1))))
}

pub fn discover_line_singularities(lines: &[Polynomial]) -> Result<Vec<SingularPointCertificate>> {
    let coeffs: Vec<[Rational; 3]> = lines.iter().map(linear_coefficients).collect::<Result<_>>()?;
    let mut points: Vec<[Rational; 3]> = Vec::new();
    for i in 0..coeffs.len() {
        for j in i + 1..coeffs.len() {
            let (a, b) = (&coeffs[i], &coeffs[j]);
            let x = [
                &a[1] * &b[2] - &a[2] * &b[1],
                &a[2] * &b[0] - &a[0] * &b[2],
                &a[0] * &b[1] - &a[1] * &b[0],
            ];
            if x.iter().all(Zero::is_zero) {
                return Err(invalid("repeated line in the arrangement"));
            }
            let p = chart_normalize(&x)?;
            if !points.contains(&p) {
                points.push(p);
            }
        }
    }
    let mut out = Vec::new();
    for p in points {
        let mut through = Vec::new();
        let mut unit = Rational::one();
        for (l, c) in lines.iter().zip(&coeffs) {
            let value = l.evaluate(&p)?;
            if value.is_zero() {
                // l(1, ρ2 + v2, ρ3 + v3) = c2 v2 + c3 v3
                through.push(Polynomial::from_terms(
                    2,
                    [(vec![1, 0], c[1].clone()), (vec![0, 1], c[2].clone())],
                ));
            } else {
                unit *= value;
            }
        }
        let k = through.len() as u32;
        let normal_form = through
            .iter()
            .fold(Polynomial::constant(2, unit), |acc, l| &acc * l);
        out.push(SingularPointCertificate {
            point: p,
            local_milnor: (k - 1) * (k - 1),
            branches: k,
            local_normal_form: normal_form,
            type_tag: match k {
                2 => "A1".to_string(),
                3 => "D4".to_string(),
                _ => format!("ordinary-{k}"),
            },
            coordinate_change: None,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub pass: bool,
    pub failures: Vec<String>,
}

impl Check {
    fn from_failures(failures: Vec<String>) -> Self {
        Check {
            pass: failures.is_empty(),
            failures,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            write!(f, "pass")
        } else {
            write!(f, "FAIL ({})", self.failures.join("; "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssumptionReport {
    /// `z1^2 f(0,z2,z3) + h` is Newton non-degenerate.
    pub ff: Check,
    /// No certified singular point of `C` lies on `h = 0`.
    pub sing_disjoint: Check,
    pub in_w_gamma: Check,
}

pub fn check_assumptions(m: &FamilyMember, mode: &Mode) -> Result<AssumptionReport> {
    let z1sq = Polynomial::term(pure_power(3, 0, 2), Rational::one());
    let f0 = m.f.substitute(0, &Polynomial::zero(3));
    let ff_poly = &(&z1sq * &f0) + &m.h;
    let ff_report = classify(&ff_poly, None, mode)?;
    let ff = Check::from_failures(
        ff_report
            .verdicts
            .iter()
            .filter(|v| !v.verdict.is_nondegenerate())
            .map(|v| format!("degenerate on face {:?}", v.vertices))
            .collect(),
    );

    let mut disjoint = Vec::new();
    for cert in &m.certificates {
        if m.h.evaluate(&cert.point)?.is_zero() {
            disjoint.push(format!("h vanishes at {}", cert.label()));
        }
    }

    let (delta0, delta1) = family_facets(m.d);
    let report = classify(&m.g, Some(&delta0), mode)?;
    let mut w = Vec::new();
    if !same_shape(&report.boundary, &delta0, &delta1) {
        w.push("Newton boundary differs from the family boundary".to_string());
    }
    for v in &report.verdicts {
        if Some(v.face) != report.distinguished && !v.verdict.is_nondegenerate() {
            w.push(format!("degenerate on face {:?}", v.vertices));
        }
    }
    Ok(AssumptionReport {
        ff,
        sing_disjoint: Check::from_failures(disjoint),
        in_w_gamma: Check::from_failures(w),
    })
}

fn same_shape(b: &NewtonBoundary, delta0: &[Point], delta1: &[Point]) -> bool {
    let facets: Vec<_> = b.facets().collect();
    facets.len() == 2
        && facets.iter().any(|f| f.same_vertices(delta0))
        && facets.iter().any(|f| f.same_vertices(delta1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SectionConfig {
    pub seed: u64,
    pub retries: u32,
}

impl Default for SectionConfig {
    fn default() -> Self {
        SectionConfig { seed: 0, retries: 16 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SectionResult {
    pub mu2: i64,
    #[serde(serialize_with = "ser_rational")]
    pub a: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub b: Rational,
    pub attempts: u32,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// `g` restricted to the plane `z3 = a z1 + b z2`, in `(z1, z2)`.
pub fn plane_section(g: &Polynomial, a: &Rational, b: &Rational) -> Polynomial {
    let z1 = Polynomial::var(2, 0);
    let z2 = Polynomial::var(2, 1);
    let z3 = &z1.scale(a) + &z2.scale(b);
    g.compose(&[z1, z2, z3])
}

fn generic_section_number(m: &FamilyMember, a: &Rational, b: &Rational) -> Result<Option<i64>> {
    let s = plane_section(&m.g, a, b);
    if s.is_zero() {
        return Ok(None);
    }
    let report = classify(&s, None, &Mode::Exact)?;
    let d = m.d as i64;
    let mut expected = vec![vec![d + 2, 0], vec![2, d], vec![0, d + 3]];
    expected.sort();
    let mut vertices = report.boundary.vertices();
    vertices.sort();
    if !report.boundary.convenient
        || vertices != expected
        || report.classification != Classification::NewtonNonDegenerate
    {
        return Ok(None);
    }
    Ok(Some(newton_number(&report.boundary)?))
}

/// Milnor number of a generic plane section, starting from `(a, b)` and
/// redrawing random rationals while the section is not generic.
pub fn mu2_generic_section(
    m: &FamilyMember,
    a: Rational,
    b: Rational,
    cfg: &SectionConfig,
) -> Result<SectionResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut a, mut b) = (a, b);
    for attempt in 1..=cfg.retries.max(1) {
        if let Some(mu2) = generic_section_number(m, &a, &b)? {
            return Ok(SectionResult {
                mu2,
                a,
                b,
                attempts: attempt,
            });
        }
        a = random_rational(&mut rng);
        b = random_rational(&mut rng);
    }
    Err(Error::GenericityFailure(cfg.retries.max(1) as usize))
}

pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let num: i64 = rng.gen_range(-60..=60);
    let den: i64 = rng.gen_range(1..=12);
    Rational::new(num.into(), den.into())
}

/// Closed-form contribution of the two facets of the family boundary.
pub fn base_zeta(d: u32) -> Result<ZetaFunction> {
    if d < 2 {
        return Err(invalid(format!("d = {d} < 2")));
    }
    let di = d as i64;
    let d = d as u64;
    Ok(ZetaFunction::from_pairs([
        (d + 2, -di * di + 2 * di - 1),
        (d + 3, di + 1),
        (2 * d + 6, -2 * di - 1),
    ]))
}

/// Principal part of the pullback of `g` at a singular point of `C` in the
/// chart of `Cone(P, e2, e3)`: `v1^{d+2} (f̄(v2,v3) + v1 c)` when
/// `c = h(ρ) != 0`, otherwise `v1^{d+2} (f̄ + v1 L)` with `L` the jet of order
/// at most two of `h` at `ρ`.
pub fn local_pullback_model(m: &FamilyMember, cert: &SingularPointCertificate) -> Result<Polynomial> {
    let v1pow = Polynomial::term(pure_power(3, 0, m.d + 2), Rational::one());
    let v1 = Polynomial::var(3, 0);
    let fbar = cert.local_normal_form.embed(3, &[1, 2]);
    let c = m.h.evaluate(&cert.point)?;
    let inner = if !c.is_zero() {
        &fbar + &v1.scale(&c)
    } else {
        let one = Rational::one();
        let zero = Rational::zero();
        let ident = [[one.clone(), zero.clone()], [zero, one]];
        let a = cert.coordinate_change.as_ref().unwrap_or(&ident);
        let (v2, v3) = (Polynomial::var(3, 1), Polynomial::var(3, 2));
        let shift = |rho: &Rational, row: &[Rational; 2]| {
            &(&Polynomial::constant(3, rho.clone()) + &v2.scale(&row[0])) + &v3.scale(&row[1])
        };
        let images = [
            Polynomial::one(3),
            shift(&cert.point[1], &a[0]),
            shift(&cert.point[2], &a[1]),
        ];
        let expansion = m.h.compose(&images);
        let jet = expansion.filter_terms(|mo| mo.degree() <= 2);
        if jet.is_zero() {
            return Err(Error::LocalModel {
                point: cert.label(),
                reason: "h vanishes to order at least three".into(),
            });
        }
        &fbar + &(&v1 * &jet)
    };
    Ok(&v1pow * &inner)
}

/// Zeta-function of `g` at the origin: the facet contribution, the
/// `(1 - t^{d+2})^{μtot}` correction and one local factor per singular point.
pub fn assemble_zeta(m: &FamilyMember) -> Result<ZetaFunction> {
    let mut z = base_zeta(m.d)?.multiply(&ZetaFunction::factor(m.d as u64 + 2, m.mu_tot as i64));
    for cert in &m.certificates {
        let model = local_pullback_model(m, cert)?;
        let report = classify(&model, None, &Mode::Exact)?;
        if report.classification != Classification::NewtonNonDegenerate {
            return Err(Error::LocalModel {
                point: cert.label(),
                reason: "local model is Newton degenerate".into(),
            });
        }
        z = z.multiply(&varchenko_zeta(&report.boundary)?);
    }
    Ok(z)
}

/// Total Milnor number of `C` read off a zeta-function of the family shape.
pub fn infer_mu_tot(z: &ZetaFunction, d: u32) -> Result<i64> {
    let rest = z.multiply(&base_zeta(d)?.inverse());
    let level = d as u64 + 2;
    if let Some((&bad, _)) = rest.factors().iter().find(|(&k, _)| k < level) {
        return Err(Error::ZetaShape(format!(
            "factor (1-t^{bad}) below level {level}"
        )));
    }
    let mu = rest.exponent(level);
    if mu < 0 {
        return Err(Error::ZetaShape(format!("negative exponent {mu} at level {level}")));
    }
    Ok(mu)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairComparison {
    pub zeta: [ZetaFunction; 2],
    pub mu: [i64; 2],
    pub mu2: [i64; 2],
    pub zeta_equal: bool,
    pub mu_equal: bool,
    pub mu2_equal: bool,
    /// Same monodromy zeta-function.
    pub condition1: bool,
}

pub fn compare_pair(m0: &FamilyMember, m1: &FamilyMember, cfg: &SectionConfig) -> Result<PairComparison> {
    let z0 = assemble_zeta(m0)?;
    let z1 = assemble_zeta(m1)?;
    let mu = [crate::zeta::milnor_from_zeta(&z0, 3), crate::zeta::milnor_from_zeta(&z1, 3)];
    let start = || (Rational::from_integer(1.into()), Rational::from_integer(2.into()));
    let (a, b) = start();
    let s0 = mu2_generic_section(m0, a, b, cfg)?.mu2;
    let (a, b) = start();
    let s1 = mu2_generic_section(m1, a, b, cfg)?.mu2;
    let zeta_equal = z0 == z1;
    Ok(PairComparison {
        zeta: [z0, z1],
        mu,
        mu2: [s0, s1],
        zeta_equal,
        mu_equal: mu[0] == mu[1],
        mu2_equal: s0 == s1,
        condition1: zeta_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    fn lin(c: [i64; 3]) -> Polynomial {
        Polynomial::from_int_terms(3, &[(&[1, 0, 0], c[0]), (&[0, 1, 0], c[1]), (&[0, 0, 1], c[2])])
    }

    fn h(sign: i64) -> Polynomial {
        Polynomial::from_int_terms(3, &[(&[0, 5, 0], 1), (&[0, 0, 5], sign)])
    }

    fn node(nf: Polynomial) -> SingularPointCertificate {
        SingularPointCertificate {
            point: [rat(1), rat(1), rat(1)],
            local_milnor: 1,
            branches: 2,
            local_normal_form: nf,
            type_tag: "A1".into(),
            coordinate_change: None,
        }
    }

    fn sum_of_squares() -> Polynomial {
        Polynomial::from_int_terms(2, &[(&[2, 0], 1), (&[0, 2], 1)])
    }

    fn member(sign: i64) -> FamilyMember {
        let f = &lin([1, 1, -2]) * &lin([1, 3, -4]);
        build_member(f, h(sign), Polynomial::zero(3), vec![node(sum_of_squares())]).unwrap()
    }

    #[test]
    fn example_pair_zetas() {
        let z0 = assemble_zeta(&member(1)).unwrap();
        assert_eq!(z0, ZetaFunction::from_pairs([(5, 2), (10, -5)]));
        let z1 = assemble_zeta(&member(-1)).unwrap();
        assert_eq!(z1, ZetaFunction::from_pairs([(5, 3), (10, -5), (6, -1)]));
        assert_eq!(infer_mu_tot(&z0, 2).unwrap(), 1);
        assert_eq!(infer_mu_tot(&z1, 2).unwrap(), 1);
    }

    #[test]
    fn base_zeta_values() {
        assert_eq!(base_zeta(2).unwrap(), ZetaFunction::from_pairs([(4, -1), (5, 3), (10, -5)]));
        assert_eq!(base_zeta(3).unwrap(), ZetaFunction::from_pairs([(5, -4), (6, 4), (12, -7)]));
        assert!(base_zeta(1).is_err());
        assert_eq!(infer_mu_tot(&base_zeta(3).unwrap(), 3).unwrap(), 0);
    }

    #[test]
    fn local_models() {
        let m0 = member(1);
        let model = local_pullback_model(&m0, &m0.certificates[0]).unwrap();
        let expected = Polynomial::from_int_terms(3, &[(&[4, 2, 0], 1), (&[4, 0, 2], 1), (&[5, 0, 0], 2)]);
        assert_eq!(model, expected);
        let m1 = member(-1);
        let model = local_pullback_model(&m1, &m1.certificates[0]).unwrap();
        // h1(1+v2, 1+v3) has linear jet 5 v2 - 5 v3
        assert_eq!(model.coeff(&Monomial(vec![5, 1, 0])), rat(5));
        assert_eq!(model.coeff(&Monomial(vec![5, 0, 1])), rat(-5));
        assert!(model.coeff(&Monomial(vec![5, 0, 0])).is_zero());
    }

    #[test]
    fn bogus_certificate_rejected() {
        let f = &lin([1, 1, -2]) * &lin([1, 3, -4]);
        let mut cert = node(sum_of_squares());
        cert.point = [rat(1), rat(0), rat(0)];
        assert!(matches!(
            build_member(f, h(1), Polynomial::zero(3), vec![cert]),
            Err(Error::Certificate { .. })
        ));
    }

    #[test]
    fn wrong_milnor_claim_rejected() {
        let f = &lin([1, 1, -2]) * &lin([1, 3, -4]);
        let mut cert = node(sum_of_squares());
        cert.local_milnor = 2;
        assert!(build_member(f, h(1), Polynomial::zero(3), vec![cert]).is_err());
    }

    #[test]
    fn preconditions() {
        let f = &lin([1, 1, -2]) * &lin([1, 3, -4]);
        let short_h = Polynomial::from_int_terms(3, &[(&[0, 5, 0], 1)]);
        assert!(matches!(
            build_member(f.clone(), short_h, Polynomial::zero(3), vec![]),
            Err(Error::InvalidMember(_))
        ));
        let xyz = Polynomial::from_int_terms(3, &[(&[1, 1, 1], 1)]);
        assert!(build_member(xyz, h(1), Polynomial::zero(3), vec![]).is_err());
        let square = lin([1, 1, 1]).pow(2);
        assert!(build_member(square, h(1), Polynomial::zero(3), vec![]).is_err());
        let on_boundary = Polynomial::from_int_terms(3, &[(&[3, 1, 0], 1)]);
        assert!(build_member(f, h(1), on_boundary, vec![]).is_err());
    }

    #[test]
    fn assumptions_discriminate_pair() {
        let r0 = check_assumptions(&member(1), &Mode::Exact).unwrap();
        assert!(r0.ff.pass && r0.sing_disjoint.pass && r0.in_w_gamma.pass);
        let r1 = check_assumptions(&member(-1), &Mode::Exact).unwrap();
        assert!(r1.ff.pass && r1.in_w_gamma.pass);
        assert!(!r1.sing_disjoint.pass);
        assert!(r1.sing_disjoint.failures[0].contains("[1:1:1]"));
    }

    #[test]
    fn generic_sections() {
        let m = member(1);
        let r = mu2_generic_section(&m, rat(1), rat(2), &SectionConfig::default()).unwrap();
        assert_eq!(r.mu2, 10);
        let r = mu2_generic_section(&m, rat(0), rat(0), &SectionConfig::default()).unwrap();
        assert_eq!(r.mu2, 10);
    }

    #[test]
    fn line_arrangement_discovery() {
        let lines = vec![lin([1, 1, -2]), lin([1, 3, -4])];
        let m = build_line_arrangement(lines, h(1), Polynomial::zero(3)).unwrap();
        assert_eq!(m.certificates.len(), 1);
        assert_eq!(m.certificates[0].point, [rat(1), rat(1), rat(1)]);
        assert_eq!(m.mu_tot, 1);
        assert_eq!(assemble_zeta(&m).unwrap(), assemble_zeta(&member(1)).unwrap());
        // a triangle has three nodes
        let tri = vec![lin([1, 1, 1]), lin([1, -1, 2]), lin([2, 1, -1])];
        let h3 = Polynomial::from_int_terms(3, &[(&[0, 6, 0], 1), (&[0, 0, 6], 1)]);
        let m = build_line_arrangement(tri, h3, Polynomial::zero(3)).unwrap();
        assert_eq!(m.mu_tot, 3);
        let z = assemble_zeta(&m).unwrap();
        assert_eq!(infer_mu_tot(&z, 3).unwrap(), 3);
        assert_eq!(chart_normalize(&[ratio(2, 1), rat(1), rat(0)]).unwrap()[1], ratio(1, 2));
    }

    #[test]
    fn smooth_member_has_base_zeta() {
        let f = Polynomial::from_int_terms(3, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], 1)]);
        let m = build_member(f, h(1), Polynomial::zero(3), vec![]).unwrap();
        assert_eq!(assemble_zeta(&m).unwrap(), base_zeta(2).unwrap());
    }
}
