use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{det, Point};
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fan {
    pub generators: Vec<(String, Point)>,
    /// Oriented triples of generator indices.
    pub maximal_cones: Vec<[usize; 3]>,
}

impl Fan {
    pub fn index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|(n, _)| n == name)
    }

    pub fn vector(&self, name: &str) -> Option<&Point> {
        self.index(name).map(|i| &self.generators[i].1)
    }

    pub fn cone_names(&self, cone: &[usize; 3]) -> [&str; 3] {
        cone.map(|i| self.generators[i].0.as_str())
    }

    pub fn determinant(&self, cone: &[usize; 3]) -> i64 {
        let rows: Vec<Point> = cone.iter().map(|&i| self.generators[i].1.clone()).collect();
        det(&rows)
    }

    pub fn all_unimodular(&self) -> bool {
        self.maximal_cones.iter().all(|c| self.determinant(c).abs() == 1)
    }

    /// The maximal cone with these generators, in any order.
    pub fn find_cone(&self, names: &[&str; 3]) -> Option<[usize; 3]> {
        let mut wanted: Vec<usize> = names.iter().map(|n| self.index(n)).collect::<Option<_>>()?;
        wanted.sort();
        self.maximal_cones.iter().copied().find(|c| {
            let mut s = c.to_vec();
            s.sort();
            s == wanted
        })
    }

    /// Indices of cones whose interior contains `v`.
    pub fn cones_containing(&self, v: &[i64]) -> Vec<usize> {
        (0..self.maximal_cones.len())
            .filter(|&k| {
                let c = &self.maximal_cones[k];
                let rows: Vec<Point> = c.iter().map(|&i| self.generators[i].1.clone()).collect();
                let d = det(&rows);
                // Cramer: coefficient of each generator in v, all positive
                (0..3).all(|j| {
                    let mut m = rows.clone();
                    m[j] = v.to_vec();
                    det(&m) * d.signum() > 0
                })
            })
            .collect()
    }
}

/// The regular subdivision with extra rays `P = (1,1,1)`, `Q = (3,2,2)` and
/// `R = (2,1,1)`.
pub fn sigma_star() -> Fan {
    let generators: Vec<(String, Point)> = [
        ("e1", vec![1, 0, 0]),
        ("e2", vec![0, 1, 0]),
        ("e3", vec![0, 0, 1]),
        ("P", vec![1, 1, 1]),
        ("Q", vec![3, 2, 2]),
        ("R", vec![2, 1, 1]),
    ]
    .into_iter()
    .map(|(n, v)| (n.to_string(), v))
    .collect();
    let fan = Fan {
        generators,
        maximal_cones: Vec::new(),
    };
    let cones = [
        ["e1", "R", "e2"],
        ["e1", "R", "e3"],
        ["R", "Q", "e2"],
        ["R", "Q", "e3"],
        ["Q", "P", "e2"],
        ["Q", "P", "e3"],
        ["P", "e2", "e3"],
    ]
    .map(|c| c.map(|n| fan.index(n).unwrap()));
    Fan {
        maximal_cones: cones.to_vec(),
        ..fan
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChartPullback {
    /// Vanishing order of the pullback along each generator of the cone.
    pub orders: Vec<(String, u32)>,
    #[serde(serialize_with = "ser_display")]
    pub strict_transform: Polynomial,
}

fn ser_display<S: serde::Serializer>(p: &Polynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// Pullback of `g` to the chart of a maximal cone: `z_i = ∏_k u_k^{S_k[i]}`.
pub fn chart_pullback(fan: &Fan, g: &Polynomial, cone: &[&str; 3]) -> Result<ChartPullback> {
    let c = fan.find_cone(cone).ok_or(Error::ConeNotInFan)?;
    let ordered: Vec<usize> = cone.iter().map(|n| fan.index(n).unwrap()).collect();
    debug_assert!(ordered.iter().all(|i| c.contains(i)));
    let map: Vec<Vec<u32>> = ordered
        .iter()
        .map(|&i| fan.generators[i].1.iter().map(|&x| x as u32).collect())
        .collect();
    let (factor, strict) = g.substitute_monomial_map(&map);
    let orders = ordered
        .iter()
        .zip(factor.iter().chain(std::iter::repeat(&0)))
        .map(|(&i, &e)| (fan.generators[i].0.clone(), e))
        .collect();
    Ok(ChartPullback {
        orders,
        strict_transform: strict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    #[test]
    fn seven_unimodular_cones() {
        let fan = sigma_star();
        assert_eq!(fan.maximal_cones.len(), 7);
        assert!(fan.all_unimodular());
        assert_eq!(fan.vector("Q"), Some(&vec![3, 2, 2]));
    }

    #[test]
    fn cones_tile_the_orthant() {
        let fan = sigma_star();
        for a in 1..12 {
            for b in 1..12 {
                for c in 1..12 {
                    // perturb off the walls
                    let v = vec![1000 * a + 1, 1000 * b + 3, 1000 * c + 7];
                    assert_eq!(fan.cones_containing(&v).len(), 1, "{v:?}");
                }
            }
        }
    }

    #[test]
    fn monomial_orders_follow_generators() {
        let fan = sigma_star();
        for cone in &fan.maximal_cones {
            let names = fan.cone_names(cone);
            for i in 0..3 {
                let z = Polynomial::term(Monomial::var(3, i), crate::poly::rat(1));
                let pb = chart_pullback(&fan, &z, &names).unwrap();
                for (name, order) in &pb.orders {
                    assert_eq!(*order as i64, fan.vector(name).unwrap()[i]);
                }
            }
        }
    }

    #[test]
    fn unknown_cone() {
        let fan = sigma_star();
        let z = Polynomial::var(3, 0);
        assert_eq!(chart_pullback(&fan, &z, &["P", "R", "e2"]), Err(Error::ConeNotInFan));
    }
}
