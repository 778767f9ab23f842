//! JSON file formats for monoids, operations, relations, fragments
//! and preservation certificates.
//!
//! The formats are stable: serialization is deterministic (sorted
//! part keys, fixed field order) and every reader accepts exactly
//! what the matching writer emits.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::closures::{PrecloneFragment, RelCloneFragment};
use crate::error::{Error, Result};
use crate::galois::Witness;
use crate::monoid::Monoid;
use crate::ops::{SignedOp, Signum};
use crate::rel::{srelation_from_named_parts, SRelation};

/// `{"elements":["+","-"],"unit":"+","table":[["+","-"],["-","+"]]}`
/// where `table[i][j]` names `elements[i] * elements[j]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonoidFile {
    pub elements: Vec<String>,
    pub unit: String,
    pub table: Vec<Vec<String>>,
}

impl MonoidFile {
    pub fn to_monoid(&self) -> Result<Monoid> {
        let index = |name: &str| -> Result<usize> {
            self.elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| Error::UnknownElement(name.to_string()))
        };
        let unit = index(&self.unit)?;
        let mut table = Vec::with_capacity(self.table.len());
        for row in &self.table {
            let mut out = Vec::with_capacity(row.len());
            for name in row {
                out.push(index(name)?);
            }
            table.push(out);
        }
        Monoid::validate(self.elements.clone(), unit, table)
    }

    pub fn from_monoid(m: &Monoid) -> MonoidFile {
        let names = m.element_names();
        let table = (0..m.size())
            .map(|a| {
                (0..m.size())
                    .map(|b| names[m.mul(a as u8, b as u8) as usize].clone())
                    .collect()
            })
            .collect();
        MonoidFile {
            elements: names.to_vec(),
            unit: names[m.unit() as usize].clone(),
            table,
        }
    }
}

/// `{"domain_size":2,"arity":2,"signum":["+","+"],"values":[0,0,0,1]}`
/// with values in tuple-index order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OpFile {
    pub domain_size: usize,
    pub arity: usize,
    pub signum: Vec<String>,
    pub values: Vec<u8>,
}

impl OpFile {
    pub fn to_op(&self, monoid: &Monoid) -> Result<SignedOp> {
        if self.signum.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: self.signum.len() });
        }
        let signum = parse_signum_names(&self.signum, monoid)?;
        SignedOp::new(self.domain_size, signum, self.values.clone())
    }

    pub fn from_op(f: &SignedOp, monoid: &Monoid) -> OpFile {
        OpFile {
            domain_size: f.k(),
            arity: f.arity(),
            signum: signum_names(f.signum(), monoid),
            values: f.values().to_vec(),
        }
    }
}

/// `{"domain_size":2,"arity":2,"parts":{"+":[[0,0],[0,1],[1,1]]}}`;
/// omitted signum keys mean empty parts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationFile {
    pub domain_size: usize,
    pub arity: usize,
    pub parts: BTreeMap<String, Vec<Vec<u8>>>,
}

impl RelationFile {
    pub fn to_srelation(&self, monoid: &Monoid) -> Result<SRelation> {
        srelation_from_named_parts(self.domain_size, self.arity, &self.parts, monoid)
    }

    pub fn from_srelation(rho: &SRelation, monoid: &Monoid) -> RelationFile {
        let mut parts = BTreeMap::new();
        for s in monoid.elems() {
            let part = rho.part(s);
            if !part.is_empty() {
                parts.insert(monoid.element_name(s).to_string(), part.tuples().collect());
            }
        }
        RelationFile { domain_size: rho.k(), arity: rho.arity(), parts }
    }
}

/// `{"violated_s":"+","columns":[[0,1],[1,0]],"image":[1,1]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateFile {
    pub violated_s: String,
    pub columns: Vec<Vec<u8>>,
    pub image: Vec<u8>,
}

impl CertificateFile {
    pub fn from_witness(w: &Witness, monoid: &Monoid) -> CertificateFile {
        CertificateFile {
            violated_s: monoid.element_name(w.s).to_string(),
            columns: w.columns.clone(),
            image: w.image.clone(),
        }
    }
}

/// Fragment dump header: caps plus the per-arity saturation flags.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FragmentCaps {
    pub arity_cap: usize,
    pub slack: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OpFragmentFile {
    pub caps: FragmentCaps,
    pub saturated_arities: Vec<bool>,
    pub members: Vec<OpFile>,
}

impl OpFragmentFile {
    pub fn from_fragment(fragment: &PrecloneFragment, monoid: &Monoid) -> OpFragmentFile {
        OpFragmentFile {
            caps: FragmentCaps { arity_cap: fragment.arity_cap, slack: fragment.slack },
            saturated_arities: fragment.saturated.clone(),
            members: fragment.members.iter().map(|f| OpFile::from_op(f, monoid)).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelFragmentFile {
    pub caps: FragmentCaps,
    pub saturated_arities: Vec<bool>,
    pub members: Vec<RelationFile>,
}

impl RelFragmentFile {
    pub fn from_fragment(fragment: &RelCloneFragment, monoid: &Monoid) -> RelFragmentFile {
        RelFragmentFile {
            caps: FragmentCaps { arity_cap: fragment.arity_cap, slack: fragment.slack },
            saturated_arities: fragment.saturated.clone(),
            members: fragment
                .members
                .iter()
                .map(|r| RelationFile::from_srelation(r, monoid))
                .collect(),
        }
    }
}

/// Resolves a monoid from a builtin name or a JSON file path.
pub fn load_monoid(source: &str) -> Result<Monoid> {
    if Monoid::builtin_names().contains(&source) {
        return Monoid::builtin(source);
    }
    let text = std::fs::read_to_string(source)?;
    let file: MonoidFile = serde_json::from_str(&text)?;
    file.to_monoid()
}

pub fn load_op(path: &str, monoid: &Monoid) -> Result<SignedOp> {
    let text = std::fs::read_to_string(path)?;
    let file: OpFile = serde_json::from_str(&text)?;
    file.to_op(monoid)
}

pub fn load_srelation(path: &str, monoid: &Monoid) -> Result<SRelation> {
    let text = std::fs::read_to_string(path)?;
    let file: RelationFile = serde_json::from_str(&text)?;
    file.to_srelation(monoid)
}

/// Parses the comma-separated signum literal, e.g. `+,-,+`.
pub fn parse_signum_literal(literal: &str, monoid: &Monoid) -> Result<Signum> {
    let names: Vec<String> = literal.split(',').map(|p| p.trim().to_string()).collect();
    parse_signum_names(&names, monoid)
}

pub fn parse_signum_names<T: AsRef<str>>(names: &[T], monoid: &Monoid) -> Result<Signum> {
    let mut out = Vec::with_capacity(names.len());
    for name in names {
        out.push(monoid.element_index(name.as_ref())?);
    }
    if out.is_empty() {
        return Err(Error::BadSignum);
    }
    Ok(Signum(out))
}

pub fn signum_names(signum: &Signum, monoid: &Monoid) -> Vec<String> {
    signum.0.iter().map(|&s| monoid.element_name(s).to_string()).collect()
}

pub fn signum_literal(signum: &Signum, monoid: &Monoid) -> String {
    signum_names(signum, monoid).join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rel::Relation;

    fn z2() -> Monoid {
        Monoid::builtin("z2").unwrap()
    }

    #[test]
    fn monoid_roundtrip() {
        let text = r#"{"elements":["+","-"],"unit":"+","table":[["+","-"],["-","+"]]}"#;
        let file: MonoidFile = serde_json::from_str(text).unwrap();
        let m = file.to_monoid().unwrap();
        assert_eq!(m.size(), 2);
        assert_eq!(m.mul(1, 1), 0);
        let back = MonoidFile::from_monoid(&m);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn monoid_file_rejects_unknown_unit() {
        let text = r#"{"elements":["+","-"],"unit":"?","table":[["+","-"],["-","+"]]}"#;
        let file: MonoidFile = serde_json::from_str(text).unwrap();
        assert!(file.to_monoid().is_err());
    }

    #[test]
    fn op_roundtrip() {
        let m = z2();
        let text =
            r#"{"domain_size":2,"arity":2,"signum":["+","+"],"values":[0,0,0,1]}"#;
        let file: OpFile = serde_json::from_str(text).unwrap();
        let f = file.to_op(&m).unwrap();
        assert_eq!(f.eval(&[1, 1]).unwrap(), 1);
        assert_eq!(f.eval(&[0, 1]).unwrap(), 0);
        let back = OpFile::from_op(&f, &m);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn op_file_signum_length_must_match() {
        let m = z2();
        let text = r#"{"domain_size":2,"arity":2,"signum":["+"],"values":[0,0,0,1]}"#;
        let file: OpFile = serde_json::from_str(text).unwrap();
        assert!(file.to_op(&m).is_err());
    }

    #[test]
    fn relation_roundtrip_and_empty_parts() {
        let m = z2();
        let text = r#"{"domain_size":2,"arity":2,"parts":{"+":[[0,0],[0,1],[1,1]]}}"#;
        let file: RelationFile = serde_json::from_str(text).unwrap();
        let rho = file.to_srelation(&m).unwrap();
        assert!(rho.part(0).contains(&[0, 1]));
        assert!(rho.part(1).is_empty());
        let back = RelationFile::from_srelation(&rho, &m);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn certificate_format() {
        let m = z2();
        let w = Witness { s: 0, columns: vec![vec![0, 1], vec![1, 0]], image: vec![1, 1] };
        let file = CertificateFile::from_witness(&w, &m);
        assert_eq!(
            serde_json::to_string(&file).unwrap(),
            r#"{"violated_s":"+","columns":[[0,1],[1,0]],"image":[1,1]}"#
        );
    }

    #[test]
    fn signum_literal_parsing() {
        let m = z2();
        let s = parse_signum_literal("+,-,+", &m).unwrap();
        assert_eq!(s.0, vec![0, 1, 0]);
        assert_eq!(signum_literal(&s, &m), "+,-,+");
        assert!(parse_signum_literal("+,?", &m).is_err());
    }

    #[test]
    fn fragment_dump_has_header() {
        let m = z2();
        let fragment =
            crate::closures::preclone_generate(&[], 2, &m, 1, 1, 1000).unwrap();
        let dump = OpFragmentFile::from_fragment(&fragment, &m);
        let v: serde_json::Value =
            serde_json::from_str(&serde_json::to_string(&dump).unwrap()).unwrap();
        assert_eq!(v["caps"]["arity_cap"], 1);
        assert!(v["saturated_arities"][0].as_bool().unwrap());
    }

    #[test]
    fn relation_writer_sorts_part_keys() {
        let m = z2();
        let mut rho = SRelation::new(vec![
            Relation::empty(2, 1).unwrap(),
            Relation::empty(2, 1).unwrap(),
        ])
        .unwrap();
        rho.part_mut(1).insert(&[0]);
        rho.part_mut(0).insert(&[1]);
        let back = RelationFile::from_srelation(&rho, &m);
        let keys: Vec<&String> = back.parts.keys().collect();
        assert_eq!(keys, vec!["+", "-"]);
    }
}
