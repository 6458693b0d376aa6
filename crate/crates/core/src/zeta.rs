//! Monodromy zeta-functions as normalized products `∏ (1 - t^d)^ν` and
//! Varchenko's formula in terms of the Newton boundary.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::newton::{coordinate_facets, newton_boundary, nonempty_subsets, NewtonBoundary};
use crate::poly::Polynomial;

/// Map `d -> ν` with no zero exponents; equality is map equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZetaFunction {
    factors: BTreeMap<u64, i64>,
}

impl ZetaFunction {
    pub fn one() -> Self {
        Self::default()
    }

    /// The single factor `(1 - t^d)^nu`.
    pub fn factor(d: u64, nu: i64) -> Self {
        Self::from_pairs([(d, nu)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (u64, i64)>>(pairs: I) -> Self {
        let mut z = Self::one();
        for (d, nu) in pairs {
            z.add_exponent(d, nu);
        }
        z
    }

    fn add_exponent(&mut self, d: u64, nu: i64) {
        assert!(d > 0, "factor degrees are positive");
        let e = self.factors.entry(d).or_insert(0);
        *e += nu;
        if *e == 0 {
            self.factors.remove(&d);
        }
    }

    pub fn factors(&self) -> &BTreeMap<u64, i64> {
        &self.factors
    }

    pub fn exponent(&self, d: u64) -> i64 {
        self.factors.get(&d).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut z = self.clone();
        for (&d, &nu) in &other.factors {
            z.add_exponent(d, nu);
        }
        z
    }

    pub fn power(&self, k: i64) -> Self {
        Self::from_pairs(self.factors.iter().map(|(&d, &nu)| (d, nu * k)))
    }

    pub fn inverse(&self) -> Self {
        self.power(-1)
    }

    /// `Σ d·ν`, the degree of the rational function.
    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|(&d, &nu)| d as i64 * nu).sum()
    }

    pub fn pairs(&self) -> Vec<(u64, i64)> {
        self.factors.iter().map(|(&d, &nu)| (d, nu)).collect()
    }
}

impl fmt::Display for ZetaFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(&d, &nu)| {
                let base = if d == 1 { "(1-t)".to_string() } else { format!("(1-t^{d})") };
                if nu == 1 {
                    base
                } else {
                    format!("{base}^{nu}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for ZetaFunction {
    type Err = Error;

    /// Accepts the pretty form, e.g. `(1-t^4)^-1 (1-t^5)^3`, or `1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |message: &str| Error::Parse {
            line: 1,
            column: 1,
            message: format!("{message} in zeta-function `{s}`"),
        };
        let s = s.trim();
        if s == "1" {
            return Ok(Self::one());
        }
        let mut z = Self::one();
        let mut rest = s;
        while !rest.is_empty() {
            rest = rest
                .strip_prefix("(1-t")
                .ok_or_else(|| bad("expected `(1-t`"))?;
            let (d, tail) = match rest.strip_prefix('^') {
                Some(r) => {
                    let end = r.find(')').ok_or_else(|| bad("missing `)`"))?;
                    (r[..end].parse::<u64>().map_err(|_| bad("bad degree"))?, &r[end..])
                }
                None => (1, rest),
            };
            rest = tail.strip_prefix(')').ok_or_else(|| bad("missing `)`"))?;
            let nu = match rest.strip_prefix('^') {
                Some(r) => {
                    let end = r.find(|c: char| c.is_whitespace()).unwrap_or(r.len());
                    rest = &r[end..];
                    r[..end].parse::<i64>().map_err(|_| bad("bad exponent"))?
                }
                None => 1,
            };
            if d == 0 {
                return Err(bad("zero degree"));
            }
            z.add_exponent(d, nu);
            rest = rest.trim_start();
        }
        Ok(z)
    }
}

impl Serialize for ZetaFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.pairs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZetaFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(u64, i64)>::deserialize(d)?;
        if pairs.iter().any(|(d, _)| *d == 0) {
            return Err(serde::de::Error::custom("factor degree must be positive"));
        }
        Ok(Self::from_pairs(pairs))
    }
}

/// Varchenko's formula: the product over coordinate subsets `I` with
/// `g|_I ≢ 0` and top-dimensional compact faces `σ` of `Γ(g|_I)` of
/// `(1 - t^{m(σ)})^{(-1)^{|I|} NVol(σ)}`.
pub fn varchenko_zeta(b: &NewtonBoundary) -> Result<ZetaFunction> {
    if !(2..=3).contains(&b.nvars) {
        return Err(Error::UnsupportedArity(b.nvars));
    }
    let mut z = ZetaFunction::one();
    for subset in nonempty_subsets(b.nvars) {
        let sign = if subset.len() % 2 == 0 { 1 } else { -1 };
        for facet in coordinate_facets(b.support(), &subset) {
            z.add_exponent(facet.level as u64, sign * facet.nvol as i64);
        }
    }
    Ok(z)
}

pub fn varchenko_zeta_of(g: &Polynomial) -> Result<ZetaFunction> {
    varchenko_zeta(&newton_boundary(g)?)
}

/// Milnor number from the zeta-function of an isolated singularity in
/// `nvars` variables: `μ = (-1)^n (deg ζ + 1)`.
pub fn milnor_from_zeta(z: &ZetaFunction, nvars: usize) -> i64 {
    let sign = if nvars.is_multiple_of(2) { 1 } else { -1 };
    sign * (z.degree() + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_cancels_and_degrees() {
        let a = ZetaFunction::factor(2, 3);
        assert!(a.multiply(&a.inverse()).is_one());
        let z0 = ZetaFunction::from_pairs([(5, 2), (10, -5)]);
        assert_eq!(z0.degree(), -40);
        assert_eq!(milnor_from_zeta(&z0, 3), 39);
        let z1 = ZetaFunction::from_pairs([(5, 3), (10, -5), (6, -1)]);
        assert_eq!(z1.degree(), -41);
        assert_eq!(milnor_from_zeta(&z1, 3), 40);
        assert_eq!(a.power(2), ZetaFunction::factor(2, 6));
    }

    #[test]
    fn pretty_form_round_trip() {
        let z = ZetaFunction::from_pairs([(10, -5), (4, -1), (5, 3), (1, 1)]);
        assert_eq!(z.to_string(), "(1-t) (1-t^4)^-1 (1-t^5)^3 (1-t^10)^-5");
        assert_eq!(z.to_string().parse::<ZetaFunction>().unwrap(), z);
        assert_eq!("1".parse::<ZetaFunction>().unwrap(), ZetaFunction::one());
        assert!("(1-t^0)^2".parse::<ZetaFunction>().is_err());
        assert!("(1+t^2)".parse::<ZetaFunction>().is_err());
        assert_eq!(serde_json::to_string(&z).unwrap(), "[[1,1],[4,-1],[5,3],[10,-5]]");
    }

    #[test]
    fn sphere_and_plane_node() {
        let g = Polynomial::from_int_terms(3, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], 1)]);
        let z = varchenko_zeta_of(&g).unwrap();
        assert_eq!(z, ZetaFunction::factor(2, -1));
        let a1 = Polynomial::from_int_terms(2, &[(&[2, 0], 1), (&[0, 2], 1)]);
        let z = varchenko_zeta_of(&a1).unwrap();
        assert!(z.is_one());
        assert_eq!(milnor_from_zeta(&z, 2), 1);
    }

    #[test]
    fn non_convenient_local_models() {
        let m0 = Polynomial::from_int_terms(3, &[(&[5, 0, 0], 1), (&[4, 1, 1], 1)]);
        assert_eq!(varchenko_zeta_of(&m0).unwrap(), ZetaFunction::factor(5, -1));
        let m1 = Polynomial::from_int_terms(3, &[(&[4, 1, 1], 1), (&[5, 1, 0], 1), (&[5, 0, 1], 1)]);
        assert_eq!(varchenko_zeta_of(&m1).unwrap(), ZetaFunction::factor(6, -1));
    }

    #[test]
    fn rejects_one_variable() {
        let p = Polynomial::from_int_terms(1, &[(&[3], 1)]);
        assert_eq!(varchenko_zeta_of(&p).unwrap_err(), Error::UnsupportedArity(1));
    }
}
