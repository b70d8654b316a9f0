//! The structured document: one JSON object per derived system, with
//! every polynomial and element stored as its canonical string.

use qpain_core::contiguity::{verify_inverse_identity, DiscreteSystem};
use qpain_core::ncalgebra::{Algebra, Family};
use serde::{Deserialize, Serialize};

use crate::parse::{parse_expression, parse_scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub name: String,
    pub title: String,
    pub family: String,
    pub l: u8,
    pub verified: bool,
    pub shifts: Vec<ShiftDoc>,
    pub equations: Vec<EquationDoc>,
    pub param_shifts: Vec<ParamShiftDoc>,
    pub certificates: Vec<CertificateDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftDoc {
    pub name: String,
    pub word: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationDoc {
    pub label: String,
    pub lhs: String,
    pub rhs_regular: String,
    pub rhs_inverse: Vec<InverseDoc>,
    pub frame: String,
    pub view: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseDoc {
    pub numerator: String,
    pub denominator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamShiftDoc {
    pub shift: String,
    pub param: String,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub equation: String,
    pub frame: String,
    pub lhs: String,
    pub c: String,
    pub d: String,
}

impl Document {
    pub fn from_system(sys: &DiscreteSystem) -> Document {
        let family = match sys.alg.family() {
            Family::Pii => "pii",
            Family::Al => "al",
        };
        Document {
            name: sys.name.clone(),
            title: sys.title.clone(),
            family: family.into(),
            l: sys.alg.rank(),
            verified: sys.verified(),
            shifts: sys.shifts.iter().map(|s| ShiftDoc { name: s.name.clone(), word: s.word.to_string() }).collect(),
            equations: sys
                .equations
                .iter()
                .map(|e| EquationDoc {
                    label: e.label.clone(),
                    lhs: e.lhs.text(),
                    rhs_regular: e.rhs_regular.text(),
                    rhs_inverse: e
                        .rhs_inverse
                        .iter()
                        .map(|t| InverseDoc { numerator: t.numerator.to_string(), denominator: t.denominator.text() })
                        .collect(),
                    frame: e.frame.to_string(),
                    view: e.view.to_string(),
                    note: e.note.clone(),
                })
                .collect(),
            param_shifts: sys
                .param_shifts
                .iter()
                .map(|p| ParamShiftDoc { shift: p.shift.clone(), param: p.param.to_string(), image: p.image.to_string() })
                .collect(),
            certificates: sys
                .certificates
                .iter()
                .map(|c| CertificateDoc {
                    equation: c.equation.clone(),
                    frame: c.frame.to_string(),
                    lhs: c.lhs.to_string(),
                    c: c.c.to_string(),
                    d: c.d.to_string(),
                })
                .collect(),
        }
    }

    pub fn algebra(&self) -> Result<Algebra, String> {
        match self.family.as_str() {
            "pii" => Ok(Algebra::pii()),
            "al" => Algebra::al(self.l).ok_or_else(|| format!("rank {} out of range", self.l)),
            f => Err(format!("unknown family {f:?}")),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(src: &str) -> Result<Document, serde_json::Error> {
        serde_json::from_str(src)
    }

    /// Re-parses every certificate and checks both cleared products.
    pub fn reverify(&self) -> Result<usize, String> {
        let alg = self.algebra()?;
        for (k, c) in self.certificates.iter().enumerate() {
            let lhs = parse_expression(&c.lhs, alg).map_err(|e| format!("certificate {k} lhs: {e}"))?;
            let d = parse_expression(&c.d, alg).map_err(|e| format!("certificate {k} d: {e}"))?;
            let cs = parse_scalar(&c.c, alg).map_err(|e| format!("certificate {k} c: {e}"))?;
            if !verify_inverse_identity(&lhs, &cs, &d) {
                return Err(format!("certificate {k} for {} does not clear", c.equation));
            }
        }
        Ok(self.certificates.len())
    }
}
