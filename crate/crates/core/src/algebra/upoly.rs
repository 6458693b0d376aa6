use super::field::Field;

/// Dense univariate polynomial over a [`Field`]; `coeffs[k]` multiplies `x^k`.
/// Never stores a zero leading coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<F: Field> {
    coeffs: Vec<F>,
    unit: F,
}

impl<F: Field> UPoly<F> {
    pub fn new(unit: &F, mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Field::is_zero) {
            coeffs.pop();
        }
        UPoly {
            coeffs,
            unit: unit.one_like(),
        }
    }

    pub fn zero(unit: &F) -> Self {
        Self::new(unit, Vec::new())
    }

    pub fn constant(c: F) -> Self {
        let unit = c.one_like();
        Self::new(&unit, vec![c])
    }

    pub fn one(unit: &F) -> Self {
        Self::constant(unit.one_like())
    }

    pub fn x(unit: &F) -> Self {
        Self::new(unit, vec![unit.zero_like(), unit.one_like()])
    }

    pub fn unit(&self) -> &F {
        &self.unit
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.unit.zero_like())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> F {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.unit.zero_like())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect();
        Self::new(&self.unit, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|k| self.coeff(k).sub(&o.coeff(k))).collect();
        Self::new(&self.unit, c)
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.unit, self.coeffs.iter().map(Field::neg).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.unit);
        }
        let mut c = vec![self.unit.zero_like(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Self::new(&self.unit, c)
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::new(&self.unit, self.coeffs.iter().map(|a| a.mul(s)).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.unit.zero_like(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(&self.unit, c)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a.mul(&self.unit.int_like(k as i64)))
            .collect();
        Self::new(&self.unit, c)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = self.unit.zero_like();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(a);
        }
        acc
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg0();
        let inv = d.lc().inv();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(&self.unit), self.clone());
        }
        let mut q = vec![self.unit.zero_like(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul(&inv);
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].sub(&c.mul(b));
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(&self.unit, q), Self::new(&self.unit, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Quotient of an exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Inverse modulo `m`, if `gcd(self, m) = 1`.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut t0, mut t1) = (Self::zero(&self.unit), Self::one(&self.unit));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        Some(t0.scale(&r0.lc().inv()).rem(m))
    }

    /// Largest `k` with `x^k` dividing `self` (0 for the zero polynomial).
    pub fn x_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn strip_x_factor(&self) -> Self {
        let k = self.x_valuation();
        Self::new(&self.unit, self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    /// Product of the distinct irreducible factors (monic).
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return Self::one(&self.unit);
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }
}
