//! Member description files.
//!
//! ```json
//! {
//!   "name": "g0",
//!   "f": "(z1+z2-2z3)(z1+3z2-4z3)",
//!   "h": "z2^5+z3^5",
//!   "d": 2,
//!   "extra_terms": "0",
//!   "certificates": [
//!     {"point": ["1","1","1"], "local_milnor": 1, "branches": 2,
//!      "local_normal_form": "v2^2+v3^2", "type_tag": "A1"}
//!   ]
//! }
//! ```
//!
//! `f_factors` (a list of linear forms) may replace `f`; without certificates
//! the singular points of the arrangement are then found automatically.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::parser::{parse, parse_local_form, parse_rational, print, print_local_form};
use crate::error::{Error, Result};
use crate::family::{build_line_arrangement, build_member, FamilyMember, SingularPointCertificate};
use crate::poly::{Polynomial, Rational};

/// A rational written as a JSON integer or a string such as `"3/7"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Int(i64),
    Text(String),
}

impl RationalText {
    fn value(&self) -> Result<Rational> {
        match self {
            RationalText::Int(n) => Ok(Rational::from_integer((*n).into())),
            RationalText::Text(s) => parse_rational(s),
        }
    }

    fn of(r: &Rational) -> Self {
        RationalText::Text(r.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub point: [RationalText; 3],
    pub local_milnor: u32,
    pub branches: u32,
    pub local_normal_form: String,
    pub type_tag: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinate_change: Option<[[RationalText; 2]; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_factors: Option<Vec<String>>,
    pub h: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra_terms: Option<String>,
    #[serde(default)]
    pub certificates: Vec<CertificateFile>,
}

fn in_field(field: &str, e: Error) -> Error {
    match e {
        Error::Parse { line, column, message } => Error::Parse {
            line,
            column,
            message: format!("{field}: {message}"),
        },
        other => other,
    }
}

fn certificate(c: &CertificateFile) -> Result<SingularPointCertificate> {
    let [p0, p1, p2] = &c.point;
    let raw = [p0.value()?, p1.value()?, p2.value()?];
    let point = crate::family::chart_normalize(&raw)?;
    let coordinate_change = match &c.coordinate_change {
        None => None,
        Some([[a, b], [c2, d]]) => Some([[a.value()?, b.value()?], [c2.value()?, d.value()?]]),
    };
    Ok(SingularPointCertificate {
        point,
        local_milnor: c.local_milnor,
        branches: c.branches,
        local_normal_form: parse_local_form(&c.local_normal_form)
            .map_err(|e| in_field("local_normal_form", e))?,
        type_tag: c.type_tag.clone(),
        coordinate_change,
    })
}

impl MemberFile {
    pub fn build(&self) -> Result<FamilyMember> {
        let h = parse(&self.h).map_err(|e| in_field("h", e))?;
        let extra = match &self.extra_terms {
            Some(s) => parse(s).map_err(|e| in_field("extra_terms", e))?,
            None => Polynomial::zero(3),
        };
        let certs = self.certificates.iter().map(certificate).collect::<Result<Vec<_>>>()?;
        let mut m = match (&self.f, &self.f_factors) {
            (Some(_), Some(_)) => {
                return Err(Error::InvalidMember("give either `f` or `f_factors`, not both".into()))
            }
            (None, None) => return Err(Error::InvalidMember("missing `f`".into())),
            (Some(f), None) => build_member(parse(f).map_err(|e| in_field("f", e))?, h, extra, certs)?,
            (None, Some(factors)) => {
                let lines = factors
                    .iter()
                    .map(|s| parse(s).map_err(|e| in_field("f_factors", e)))
                    .collect::<Result<Vec<_>>>()?;
                if certs.is_empty() {
                    build_line_arrangement(lines, h, extra)?
                } else {
                    let f = lines.iter().fold(Polynomial::one(3), |acc, l| &acc * l);
                    let all_linear = lines.iter().all(|l| l.homogeneous_degree() == Some(1));
                    let mut m = build_member(f, h, extra, certs)?;
                    if all_linear {
                        m.line_factors = Some(lines);
                    }
                    m
                }
            }
        };
        if let Some(d) = self.d {
            if d != m.d {
                return Err(Error::InvalidMember(format!("declared d = {d} but f has degree {}", m.d)));
            }
        }
        m.name = self.name.clone();
        Ok(m)
    }

    /// Canonical description of a member.
    pub fn of(m: &FamilyMember) -> Self {
        MemberFile {
            name: m.name.clone(),
            f: Some(print(&m.f)),
            f_factors: None,
            h: print(&m.h),
            d: Some(m.d),
            extra_terms: (!m.extra_terms.is_zero()).then(|| print(&m.extra_terms)),
            certificates: m
                .certificates
                .iter()
                .map(|c| CertificateFile {
                    point: c.point.clone().map(|r| RationalText::of(&r)),
                    local_milnor: c.local_milnor,
                    branches: c.branches,
                    local_normal_form: print_local_form(&c.local_normal_form),
                    type_tag: c.type_tag.clone(),
                    coordinate_change: c
                        .coordinate_change
                        .as_ref()
                        .map(|a| a.clone().map(|row| row.map(|r| RationalText::of(&r)))),
                })
                .collect(),
        }
    }
}

pub fn member_from_json(text: &str) -> Result<FamilyMember> {
    let file: MemberFile =
        serde_json::from_str(text).map_err(|e| Error::Io(format!("member JSON: {e}")))?;
    file.build()
}

pub fn load_member(path: &Path) -> Result<FamilyMember> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut m = member_from_json(&text)?;
    if m.name.is_none() {
        m.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    const G0: &str = r#"{
        "name": "g0",
        "f": "(z1+z2-2z3)(z1+3z2-4z3)",
        "h": "z2^5+z3^5",
        "d": 2,
        "certificates": [{"point": [1, 1, 1], "local_milnor": 1, "branches": 2,
                          "local_normal_form": "v2^2+v3^2", "type_tag": "A1"}]
    }"#;

    #[test]
    fn loads_and_round_trips() {
        let m = member_from_json(G0).unwrap();
        assert_eq!(m.mu_tot, 1);
        assert_eq!(m.d, 2);
        let again = MemberFile::of(&m).build().unwrap();
        assert_eq!(again.g, m.g);
        assert_eq!(again.certificates, m.certificates);
    }

    #[test]
    fn factor_lists_discover_points() {
        let m = member_from_json(
            r#"{"f_factors": ["z1+2z2-3z3", "z1-z2-2z3"], "h": "z2^5+z3^5"}"#,
        )
        .unwrap();
        assert_eq!(m.certificates.len(), 1);
        assert_eq!(m.certificates[0].label(), "[7:1:3]");
        assert!(m.line_factors.is_some());
    }

    #[test]
    fn rejections() {
        assert!(matches!(member_from_json("{"), Err(Error::Io(_))));
        let wrong_d = G0.replace("\"d\": 2", "\"d\": 3");
        assert!(matches!(member_from_json(&wrong_d), Err(Error::InvalidMember(_))));
        let bad_expr = G0.replace("z2^5+z3^5", "z2^5+q");
        match member_from_json(&bad_expr) {
            Err(Error::Parse { message, .. }) => assert!(message.starts_with("h:")),
            other => panic!("{other:?}"),
        }
        assert!(member_from_json(r#"{"h": "z2^5+z3^5"}"#).is_err());
        assert!(load_member(Path::new("/nonexistent/member.json")).is_err());
    }
}
