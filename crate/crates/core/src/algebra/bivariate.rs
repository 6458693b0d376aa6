//! Dense bivariate polynomials `F[s][t]` and the elimination routines used to
//! decide whether `G = dG/ds = dG/dt = 0` has a solution with `s t != 0`.

use super::field::Field;
use super::upoly::UPoly;
use crate::poly::{Polynomial, Rational};

/// Polynomial in `t` whose coefficients are polynomials in `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct BPoly<F: Field> {
    coeffs: Vec<UPoly<F>>,
    unit: F,
}

impl<F: Field> BPoly<F> {
    pub fn new(unit: &F, mut coeffs: Vec<UPoly<F>>) -> Self {
        while coeffs.last().is_some_and(UPoly::is_zero) {
            coeffs.pop();
        }
        BPoly {
            coeffs,
            unit: unit.one_like(),
        }
    }

    /// Convert a two-variable [`Polynomial`] (`s = z1`, `t = z2`), mapping
    /// coefficients with `conv`; `None` if a coefficient cannot be mapped.
    pub fn from_polynomial<C>(p: &Polynomial, unit: &F, conv: C) -> Option<Self>
    where
        C: Fn(&Rational) -> Option<F>,
    {
        assert_eq!(p.nvars(), 2);
        let ds = p.degree_in(0).unwrap_or(0) as usize;
        let dt = p.degree_in(1).unwrap_or(0) as usize;
        let mut grid = vec![vec![unit.zero_like(); ds + 1]; dt + 1];
        for (m, c) in p.terms() {
            let e = m.exponents();
            grid[e[1] as usize][e[0] as usize] = conv(c)?;
        }
        let coeffs = grid.into_iter().map(|row| UPoly::new(unit, row)).collect();
        Some(Self::new(unit, coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_t(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[UPoly<F>] {
        &self.coeffs
    }

    /// Nonconstant as a bivariate polynomial.
    pub fn is_nonconstant(&self) -> bool {
        self.coeffs.len() > 1 || self.coeffs.first().is_some_and(|c| !c.is_constant())
    }

    pub fn d_ds(&self) -> Self {
        Self::new(&self.unit, self.coeffs.iter().map(UPoly::derivative).collect())
    }

    pub fn d_dt(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a.scale(&self.unit.int_like(k as i64)))
            .collect();
        Self::new(&self.unit, c)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = UPoly::zero(&self.unit);
        let c = (0..n)
            .map(|k| {
                self.coeffs
                    .get(k)
                    .unwrap_or(&z)
                    .add(o.coeffs.get(k).unwrap_or(&z))
            })
            .collect();
        Self::new(&self.unit, c)
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::new(&self.unit, self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    fn mul_upoly(&self, u: &UPoly<F>) -> Self {
        Self::new(&self.unit, self.coeffs.iter().map(|c| c.mul(u)).collect())
    }

    fn content(&self) -> UPoly<F> {
        self.coeffs
            .iter()
            .fold(UPoly::zero(&self.unit), |acc, c| acc.gcd(c))
    }

    fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        Self::new(
            &self.unit,
            self.coeffs.iter().map(|a| a.div_exact(&c)).collect(),
        )
    }

    fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.deg_t().expect("nonzero divisor");
        let lc = b.coeffs[db].clone();
        let mut r = self.clone();
        while let Some(dr) = r.deg_t() {
            if dr < db {
                break;
            }
            let rc = r.coeffs[dr].clone();
            let mut shifted = vec![UPoly::zero(&self.unit); dr - db];
            shifted.extend(b.coeffs.iter().map(|c| c.mul(&rc)));
            let sub = Self::new(&self.unit, shifted);
            let scaled = r.mul_upoly(&lc);
            r = scaled.add(&sub.scale(&self.unit.one_like().neg()));
        }
        r
    }

    /// Gcd in `F[s,t]` up to a unit, via content and primitive remainder sequences.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.primitive_or_self();
        }
        if o.is_zero() {
            return self.primitive_or_self();
        }
        let content = self.content().gcd(&o.content());
        let mut a = self.primitive_part();
        let mut b = o.primitive_part();
        if a.deg_t() < b.deg_t() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                break;
            }
            if r.deg_t() == Some(0) {
                b = Self::new(&self.unit, vec![UPoly::one(&self.unit)]);
                break;
            }
            a = b;
            b = r.primitive_part();
        }
        b.mul_upoly(&content)
    }

    fn primitive_or_self(&self) -> Self {
        if self.deg_t() == Some(0) {
            Self::new(&self.unit, vec![self.coeffs[0].monic()])
        } else {
            let c = self.content();
            let pp = self.primitive_part();
            pp.mul_upoly(&c.monic())
        }
    }

    /// `Res_t(self, o)` as a polynomial in `s` (fraction-free Bareiss on the
    /// Sylvester matrix).
    pub fn resultant_t(&self, o: &Self) -> UPoly<F> {
        let unit = &self.unit;
        let (Some(m), Some(n)) = (self.deg_t(), o.deg_t()) else {
            return UPoly::zero(unit);
        };
        let size = m + n;
        if size == 0 {
            return UPoly::one(unit);
        }
        let mut mat = vec![vec![UPoly::zero(unit); size]; size];
        for row in 0..n {
            for (k, c) in self.coeffs.iter().enumerate() {
                mat[row][row + m - k] = c.clone();
            }
        }
        for row in 0..m {
            for (k, c) in o.coeffs.iter().enumerate() {
                mat[n + row][row + n - k] = c.clone();
            }
        }
        let mut negate = false;
        let mut prev = UPoly::one(unit);
        for k in 0..size {
            if mat[k][k].is_zero() {
                let Some(swap) = (k + 1..size).find(|&i| !mat[i][k].is_zero()) else {
                    return UPoly::zero(unit);
                };
                mat.swap(k, swap);
                negate = !negate;
            }
            for i in k + 1..size {
                for j in k + 1..size {
                    let v = mat[i][j]
                        .mul(&mat[k][k])
                        .sub(&mat[i][k].mul(&mat[k][j]));
                    mat[i][j] = v.div_exact(&prev);
                }
                mat[i][k] = UPoly::zero(unit);
            }
            prev = mat[k][k].clone();
        }
        let det = mat[size - 1][size - 1].clone();
        if negate {
            det.neg()
        } else {
            det
        }
    }
}

/// Polynomial in `t` with coefficients in `F[s]/(m)`, `m` squarefree.
type ModPoly<F> = Vec<UPoly<F>>;

fn reduce<F: Field>(m: &UPoly<F>, a: &[UPoly<F>]) -> ModPoly<F> {
    let mut out: Vec<UPoly<F>> = a.iter().map(|c| c.rem(m)).collect();
    while out.last().is_some_and(UPoly::is_zero) {
        out.pop();
    }
    out
}

/// Split `m` until the leading coefficient of `a` is either zero or a unit on
/// each branch; units are normalized to 1. Returns `(modulus, poly)` pairs.
fn make_monic<F: Field>(m: &UPoly<F>, a: &[UPoly<F>]) -> Vec<(UPoly<F>, ModPoly<F>)> {
    let mut done = Vec::new();
    let mut work = vec![(m.clone(), reduce(m, a))];
    while let Some((m, mut a)) = work.pop() {
        loop {
            let Some(lc) = a.last().cloned() else {
                done.push((m, a));
                break;
            };
            let g = lc.gcd(&m);
            if g.is_constant() {
                let inv = lc.inverse_mod(&m).expect("coprime leading coefficient");
                let monic: ModPoly<F> = a.iter().map(|c| c.mul(&inv).rem(&m)).collect();
                done.push((m, monic));
                break;
            }
            if g.degree() == m.degree() {
                a.pop();
                while a.last().is_some_and(UPoly::is_zero) {
                    a.pop();
                }
                continue;
            }
            let other = m.div_exact(&g);
            work.push((other.clone(), reduce(&other, &a)));
            let a2 = reduce(&g, &a);
            work.push((g, a2));
            break;
        }
    }
    done
}

fn rem_monic<F: Field>(m: &UPoly<F>, a: &[UPoly<F>], b: &[UPoly<F>]) -> ModPoly<F> {
    let db = b.len() - 1;
    let mut r: Vec<UPoly<F>> = a.to_vec();
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top].clone();
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                let idx = top - db + j;
                r[idx] = r[idx].sub(&c.mul(bj)).rem(m);
            }
        }
        r.pop();
        while r.last().is_some_and(UPoly::is_zero) {
            r.pop();
        }
    }
    r
}

/// Gcd over `F[s]/(m)` with dynamic splitting of the modulus. Each returned
/// gcd is monic (or zero) and commutes with specialization at every root of
/// its modulus.
fn gcd_split<F: Field>(
    m: &UPoly<F>,
    a: &[UPoly<F>],
    b: &[UPoly<F>],
) -> Vec<(UPoly<F>, ModPoly<F>)> {
    let mut out = Vec::new();
    for (m1, b1) in make_monic(m, b) {
        if b1.is_empty() {
            out.extend(make_monic(&m1, a));
            continue;
        }
        let a1 = reduce(&m1, a);
        let r = rem_monic(&m1, &a1, &b1);
        out.extend(gcd_split(&m1, &b1, &r));
    }
    out
}

/// True iff `G = dG/ds = dG/dt = 0` has a solution with `s t != 0`. The
/// caller guarantees `G` has no monomial factor.
pub fn has_torus_singular_point<F: Field>(g: &BPoly<F>, lambda_candidates: &[F]) -> Option<bool> {
    let gs = g.d_ds();
    let gt = g.d_dt();
    let common = g.gcd(&gs).gcd(&gt);
    if common.is_nonconstant() {
        return Some(true);
    }
    let mut projection = None;
    for lambda in lambda_candidates {
        let h = gs.add(&gt.scale(lambda));
        if h.is_zero() || g.gcd(&h).is_nonconstant() {
            continue;
        }
        projection = Some(g.resultant_t(&h));
        break;
    }
    let res = projection?;
    if res.is_zero() {
        return None;
    }
    let p = res.strip_x_factor().squarefree_part();
    if p.is_constant() {
        return Some(false);
    }
    for (m1, g1) in gcd_split(&p, g.coeffs(), gs.coeffs()) {
        for (m2, t) in gcd_split(&m1, &g1, gt.coeffs()) {
            if m2.is_constant() {
                continue;
            }
            if t.is_empty() {
                return Some(true);
            }
            let k = t.len() - 1;
            if k == 0 {
                continue;
            }
            let q = t[..k].iter().fold(m2.clone(), |q, c| q.gcd(c));
            if q.degree() < m2.degree() {
                return Some(true);
            }
        }
    }
    Some(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, Polynomial};

    fn bp(terms: &[(&[u32], i64)]) -> BPoly<Rational> {
        let p = Polynomial::from_int_terms(2, terms);
        BPoly::from_polynomial(&p, &rat(1), |c| Some(c.clone())).unwrap()
    }

    fn lambdas() -> Vec<Rational> {
        (1..20).map(rat).collect()
    }

    #[test]
    fn resultant_of_linear_forms() {
        // Res_t(t - s, t + s - 2) = (s - 2 + s)... evaluate: t = s -> 2s - 2
        let a = bp(&[(&[0, 1], 1), (&[1, 0], -1)]);
        let b = bp(&[(&[0, 1], 1), (&[1, 0], 1), (&[0, 0], -2)]);
        let r = a.resultant_t(&b);
        let expected = UPoly::new(&rat(1), vec![rat(-2), rat(2)]);
        assert_eq!(r.monic(), expected.monic());
    }

    #[test]
    fn smooth_conic_has_no_torus_singularity() {
        // 1 + s + t
        let g = bp(&[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(has_torus_singular_point(&g, &lambdas()), Some(false));
        // 1 + s^2 + t^2
        let g = bp(&[(&[0, 0], 1), (&[2, 0], 1), (&[0, 2], 1)]);
        assert_eq!(has_torus_singular_point(&g, &lambdas()), Some(false));
    }

    #[test]
    fn nodal_cubic_is_detected() {
        // (1 - s - t)(1 + 2s - 3t): node at the torus point s = 4/5, t = 1/5
        let a = Polynomial::from_int_terms(2, &[(&[0, 0], 1), (&[1, 0], -1), (&[0, 1], -1)]);
        let b = Polynomial::from_int_terms(2, &[(&[0, 0], 1), (&[1, 0], 2), (&[0, 1], -3)]);
        let p = &a * &b;
        let g = BPoly::from_polynomial(&p, &rat(1), |c| Some(c.clone())).unwrap();
        assert_eq!(has_torus_singular_point(&g, &lambdas()), Some(true));
    }

    #[test]
    fn node_off_torus_is_ignored() {
        // (s - 1 + t)(s - 1 - t) has its node at (1, 0), outside the torus
        let a = Polynomial::from_int_terms(2, &[(&[1, 0], 1), (&[0, 0], -1), (&[0, 1], 1)]);
        let b = Polynomial::from_int_terms(2, &[(&[1, 0], 1), (&[0, 0], -1), (&[0, 1], -1)]);
        let p = &a * &b;
        let g = BPoly::from_polynomial(&p, &rat(1), |c| Some(c.clone())).unwrap();
        assert_eq!(has_torus_singular_point(&g, &lambdas()), Some(false));
    }

    #[test]
    fn repeated_component_is_degenerate() {
        let a = Polynomial::from_int_terms(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)]);
        let p = &a * &a;
        let g = BPoly::from_polynomial(&p, &rat(1), |c| Some(c.clone())).unwrap();
        assert_eq!(has_torus_singular_point(&g, &lambdas()), Some(true));
    }

    #[test]
    fn irrational_singular_points() {
        // (s^2 - 2)^2 + (t - 1)^2: singular zeros at s = +-sqrt(2), t = 1
        let s2m2 = Polynomial::from_int_terms(2, &[(&[2, 0], 1), (&[0, 0], -2)]);
        let tm1 = Polynomial::from_int_terms(2, &[(&[0, 1], 1), (&[0, 0], -1)]);
        let p = &(&s2m2 * &s2m2) + &(&tm1 * &tm1);
        let g = BPoly::from_polynomial(&p, &rat(1), |c| Some(c.clone())).unwrap();
        assert_eq!(has_torus_singular_point(&g, &lambdas()), Some(true));
    }
}
