//! Finite monoids of signa.
//!
//! A [`Monoid`] is given by an ordered element list, a unit, and a full
//! multiplication table. Elements are referenced by index everywhere in
//! the library; names appear only at I/O boundaries. The derived data
//! consumed by the rest of the crate lives here: left ideals, the group
//! of invertibles, the right-multiplication preimage families used by
//! self-intersections, and monoid automorphisms.

use crate::error::{Error, MonoidViolation, Result};

pub const MAX_MONOID_SIZE: usize = 16;

/// Subset of monoid elements as a bitmask (|S| <= 16).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElemSet(pub u16);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn singleton(s: u8) -> Self {
        ElemSet(1 << s)
    }

    pub fn contains(self, s: u8) -> bool {
        self.0 >> s & 1 != 0
    }

    pub fn insert(&mut self, s: u8) {
        self.0 |= 1 << s;
    }

    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = u8> {
        (0..16u8).filter(move |&s| self.contains(s))
    }
}

/// A family `(M_s)_{s in S}` of subsets of `S`, as used by
/// M-self-intersections. `valid` records whether the condition
/// `s' * M_s subseteq M_{s' s}` holds for all `s, s'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MFamily {
    pub sets: Vec<ElemSet>,
    pub valid: bool,
}

/// A validated finite monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monoid {
    elements: Vec<String>,
    unit: u8,
    table: Vec<u8>, // row-major |S| x |S|
}

impl Monoid {
    /// Validates a raw description. On failure the error lists every
    /// violated axiom instance.
    pub fn validate(elements: Vec<String>, unit: usize, table: Vec<Vec<usize>>) -> Result<Monoid> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::InvalidMonoid(vec![MonoidViolation::MalformedTable]));
        }
        if n > MAX_MONOID_SIZE {
            return Err(Error::MonoidTooLarge(n));
        }
        let mut violations = Vec::new();
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                violations.push(MonoidViolation::DuplicateElement(e.clone()));
            }
        }
        let well_formed = unit < n
            && table.len() == n
            && table.iter().all(|row| row.len() == n && row.iter().all(|&x| x < n));
        if !well_formed {
            violations.push(MonoidViolation::MalformedTable);
            return Err(Error::InvalidMonoid(violations));
        }
        let flat: Vec<u8> = table.iter().flatten().map(|&x| x as u8).collect();
        let mul = |a: usize, b: usize| flat[a * n + b] as usize;
        for x in 0..n {
            if mul(unit, x) != x || mul(x, unit) != x {
                violations.push(MonoidViolation::BadUnit(elements[x].clone()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        violations.push(MonoidViolation::NonAssociative(
                            elements[a].clone(),
                            elements[b].clone(),
                            elements[c].clone(),
                        ));
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(Monoid { elements, unit: unit as u8, table: flat })
        } else {
            Err(Error::InvalidMonoid(violations))
        }
    }

    /// Builtin fixtures: `trivial`, `z2`, `z3`, `sprime`, `shat`.
    pub fn builtin(name: &str) -> Result<Monoid> {
        let (elements, unit, table): (Vec<&str>, usize, Vec<Vec<usize>>) = match name {
            "trivial" => (vec!["e"], 0, vec![vec![0]]),
            "z2" => (vec!["+", "-"], 0, vec![vec![0, 1], vec![1, 0]]),
            "z3" => (
                vec!["e", "g", "g2"],
                0,
                vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
            ),
            "sprime" => (vec!["+", "o"], 0, vec![vec![0, 1], vec![1, 1]]),
            "shat" => (
                vec!["+", "-", "o"],
                0,
                vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 2]],
            ),
            _ => return Err(Error::UnknownBuiltin(name.to_string())),
        };
        Monoid::validate(elements.into_iter().map(String::from).collect(), unit, table)
    }

    pub fn builtin_names() -> &'static [&'static str] {
        &["trivial", "z2", "z3", "sprime", "shat"]
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn unit(&self) -> u8 {
        self.unit
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.table[a as usize * self.size() + b as usize]
    }

    pub fn element_name(&self, s: u8) -> &str {
        &self.elements[s as usize]
    }

    pub fn element_names(&self) -> &[String] {
        &self.elements
    }

    pub fn element_index(&self, name: &str) -> Result<u8> {
        self.elements
            .iter()
            .position(|e| e == name)
            .map(|i| i as u8)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn elems(&self) -> impl Iterator<Item = u8> + Clone {
        0..self.size() as u8
    }

    /// The left ideal `St = { s*t : s in S }`.
    pub fn left_ideal(&self, t: u8) -> ElemSet {
        let mut out = ElemSet::EMPTY;
        for s in self.elems() {
            out.insert(self.mul(s, t));
        }
        out
    }

    /// `I(S)`: the elements with a left inverse, i.e. the largest
    /// subgroup of `S`.
    pub fn invertibles(&self) -> ElemSet {
        let mut out = ElemSet::EMPTY;
        for s in self.elems() {
            if self.elems().any(|t| self.mul(t, s) == self.unit) {
                out.insert(s);
            }
        }
        out
    }

    pub fn is_group(&self) -> bool {
        self.invertibles().len() == self.size()
    }

    /// Inverse of an invertible element.
    pub fn inverse(&self, s: u8) -> Option<u8> {
        self.elems().find(|&t| self.mul(t, s) == self.unit && self.mul(s, t) == self.unit)
    }

    /// The preimage family of right multiplication by `v`:
    /// `M^v_s = { x : x*v = s }`. Valid by construction.
    pub fn m_family(&self, v: u8) -> MFamily {
        let mut sets = vec![ElemSet::EMPTY; self.size()];
        for x in self.elems() {
            sets[self.mul(x, v) as usize].insert(x);
        }
        MFamily { sets, valid: true }
    }

    /// The singleton family `T^v_s = { s*v }`; `mu_v = M-self-intersection
    /// with this family`.
    pub fn t_family(&self, v: u8) -> MFamily {
        let sets = self.elems().map(|s| ElemSet::singleton(self.mul(s, v))).collect();
        let fam = MFamily { sets, valid: false };
        let valid = self.check_m_condition(&fam);
        MFamily { valid, ..fam }
    }

    /// Condition (*): `s' * M_s subseteq M_{s' s}` for all `s, s'`.
    pub fn check_m_condition(&self, family: &MFamily) -> bool {
        if family.sets.len() != self.size() {
            return false;
        }
        for s in self.elems() {
            for sp in self.elems() {
                for x in family.sets[s as usize].iter() {
                    if !family.sets[self.mul(sp, s) as usize].contains(self.mul(sp, x)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// All monoid automorphisms, as permutations `h` with `h[a*b] =
    /// h[a]*h[b]` and `h[e] = e`. Backtracking search; fine for the
    /// small monoids this library targets.
    pub fn automorphisms(&self) -> Vec<Vec<u8>> {
        let n = self.size();
        let mut out = Vec::new();
        let mut h: Vec<Option<u8>> = vec![None; n];
        let mut used = vec![false; n];
        h[self.unit as usize] = Some(self.unit);
        used[self.unit as usize] = true;
        self.extend_automorphism(&mut h, &mut used, &mut out);
        out
    }

    fn extend_automorphism(
        &self,
        h: &mut Vec<Option<u8>>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<u8>>,
    ) {
        let next = match h.iter().position(|x| x.is_none()) {
            None => {
                out.push(h.iter().map(|x| x.unwrap()).collect());
                return;
            }
            Some(i) => i as u8,
        };
        for img in self.elems() {
            if used[img as usize] {
                continue;
            }
            h[next as usize] = Some(img);
            used[img as usize] = true;
            // check all products among already-assigned elements
            let consistent = self.elems().all(|a| {
                self.elems().all(|b| {
                    match (h[a as usize], h[b as usize]) {
                        (Some(ha), Some(hb)) => match h[self.mul(a, b) as usize] {
                            Some(hab) => hab == self.mul(ha, hb),
                            None => true,
                        },
                        _ => true,
                    }
                })
            });
            if consistent {
                self.extend_automorphism(h, used, out);
            }
            h[next as usize] = None;
            used[img as usize] = false;
        }
    }
}
