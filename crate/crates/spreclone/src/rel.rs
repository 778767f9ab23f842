//! Relations and signed relations.
//!
//! A [`Relation`] is a plain finitary relation stored as a bitset over
//! `A^m`; an [`SRelation`] is one relation per monoid element, all of
//! the same arity. Empty relations still carry their arity. The module
//! implements the classical row operations, products and meets, the
//! signum-aware index translation and self-intersections, diagonal
//! families, and duals.

use std::collections::BTreeMap;

use crate::codec::{decode, encode, tuple_space, TupleSet};
use crate::error::{Error, Result};
use crate::monoid::{MFamily, Monoid};
use crate::ops::{SignedOp, Signum};

/// A plain `m`-ary relation over `A = {0..k-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    k: usize,
    arity: usize,
    members: TupleSet,
}

impl Relation {
    pub fn empty(k: usize, arity: usize) -> Result<Self> {
        let space = Self::space(k, arity)?;
        Ok(Relation { k, arity, members: TupleSet::empty(space) })
    }

    pub fn full(k: usize, arity: usize) -> Result<Self> {
        let space = Self::space(k, arity)?;
        Ok(Relation { k, arity, members: TupleSet::full(space) })
    }

    fn space(k: usize, arity: usize) -> Result<usize> {
        if arity == 0 {
            return Err(Error::Malformed("relation arity must be >= 1".into()));
        }
        tuple_space(k, arity).ok_or_else(|| Error::CapExceeded(format!("tuple space {k}^{arity}")))
    }

    pub fn from_tuples(k: usize, arity: usize, tuples: &[Vec<u8>]) -> Result<Self> {
        let mut rel = Self::empty(k, arity)?;
        for t in tuples {
            if t.len() != arity {
                return Err(Error::ArityMismatch { expected: arity, got: t.len() });
            }
            if t.iter().any(|&a| a as usize >= k) {
                return Err(Error::Malformed("tuple entry out of domain".into()));
            }
            rel.members.insert(encode(t, k));
        }
        Ok(rel)
    }

    /// The binary diagonal `Delta_A`.
    pub fn diagonal(k: usize) -> Self {
        let mut rel = Self::empty(k, 2).unwrap();
        for a in 0..k as u8 {
            rel.members.insert(encode(&[a, a], k));
        }
        rel
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn members(&self) -> &TupleSet {
        &self.members
    }

    pub fn contains(&self, tuple: &[u8]) -> bool {
        self.members.contains(encode(tuple, self.k))
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.members.contains(index)
    }

    pub fn insert(&mut self, tuple: &[u8]) -> bool {
        self.members.insert(encode(tuple, self.k))
    }

    pub fn insert_index(&mut self, index: usize) -> bool {
        self.members.insert(index)
    }

    pub fn count(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.count() == self.members.nbits()
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.arity == other.arity && self.k == other.k && self.members.is_subset(&other.members)
    }

    /// Tuples in codec order.
    pub fn tuples(&self) -> impl Iterator<Item = Vec<u8>> + '_ {
        self.members.iter_ones().map(move |i| decode(i, self.k, self.arity))
    }

    /// Row selection `{ (a_{z_1},..,a_{z_t}) : a in sigma }`, indices
    /// 0-based, repeats allowed.
    pub fn pr_rows(&self, rows: &[usize]) -> Result<Relation> {
        if rows.is_empty() {
            return Err(Error::Malformed("row selection must be nonempty".into()));
        }
        if let Some(&bad) = rows.iter().find(|&&z| z >= self.arity) {
            return Err(Error::BadRowIndex(bad, self.arity));
        }
        let mut out = Relation::empty(self.k, rows.len())?;
        for t in self.tuples() {
            let img: Vec<u8> = rows.iter().map(|&z| t[z]).collect();
            out.members.insert(encode(&img, self.k));
        }
        Ok(out)
    }

    /// Cyclic shift of rows; identity on unary relations.
    pub fn zeta(&self) -> Relation {
        if self.arity == 1 {
            return self.clone();
        }
        let rows: Vec<usize> = (1..self.arity).chain([0]).collect();
        self.pr_rows(&rows).unwrap()
    }

    /// Transposition of the first two rows; identity on unary.
    pub fn tau(&self) -> Relation {
        if self.arity == 1 {
            return self.clone();
        }
        let mut rows: Vec<usize> = (0..self.arity).collect();
        rows.swap(0, 1);
        self.pr_rows(&rows).unwrap()
    }

    /// Deletion of the first row; identity on unary.
    pub fn pr(&self) -> Relation {
        if self.arity == 1 {
            return self.clone();
        }
        let rows: Vec<usize> = (1..self.arity).collect();
        self.pr_rows(&rows).unwrap()
    }

    pub fn product(&self, other: &Relation) -> Result<Relation> {
        if self.k != other.k {
            return Err(Error::DomainMismatch(self.k, other.k));
        }
        let mut out = Relation::empty(self.k, self.arity + other.arity)?;
        for a in self.tuples() {
            for b in other.tuples() {
                let mut t = a.clone();
                t.extend_from_slice(&b);
                out.members.insert(encode(&t, self.k));
            }
        }
        Ok(out)
    }

    /// Intersection; mismatched arities give the empty relation of the
    /// first operand's arity.
    pub fn meet(&self, other: &Relation) -> Result<Relation> {
        if self.k != other.k {
            return Err(Error::DomainMismatch(self.k, other.k));
        }
        if self.arity != other.arity {
            return Relation::empty(self.k, self.arity);
        }
        let mut out = self.clone();
        out.members.intersect_with(&other.members);
        Ok(out)
    }

    pub fn union_with(&mut self, other: &Relation) {
        debug_assert_eq!((self.k, self.arity), (other.k, other.arity));
        self.members.union_with(&other.members);
    }

    pub fn pi_dual(&self, pi: &[u8]) -> Relation {
        let mut out = Relation::empty(self.k, self.arity).unwrap();
        for t in self.tuples() {
            let img: Vec<u8> = t.iter().map(|&a| pi[a as usize]).collect();
            out.members.insert(encode(&img, self.k));
        }
        out
    }

    /// The partition of row indices realized if this is a diagonal
    /// relation, or `None` otherwise. Empty relations are not
    /// diagonals of any partition here (they are the `top` marker).
    pub fn diagonal_partition(&self) -> Option<Vec<u8>> {
        if self.is_empty() {
            return None;
        }
        // rows i, j fall in one block iff a_i = a_j for every member
        let tuples: Vec<Vec<u8>> = self.tuples().collect();
        let mut block = vec![u8::MAX; self.arity];
        let mut next = 0u8;
        for i in 0..self.arity {
            if block[i] != u8::MAX {
                continue;
            }
            block[i] = next;
            for j in i + 1..self.arity {
                if block[j] == u8::MAX && tuples.iter().all(|t| t[i] == t[j]) {
                    block[j] = next;
                }
            }
            next += 1;
        }
        let candidate = diagonal_of_partition(self.k, &block).ok()?;
        if candidate == *self {
            Some(block)
        } else {
            None
        }
    }
}

/// Realizes `delta^m_epsilon` from a partition given as a block index
/// per row (first occurrences increasing).
pub fn diagonal_of_partition(k: usize, block: &[u8]) -> Result<Relation> {
    let m = block.len();
    let nblocks = match block.iter().max() {
        Some(&b) => b as usize + 1,
        None => return Err(Error::BadPartition),
    };
    // canonical restricted-growth form
    let mut seen = 0usize;
    for &b in block {
        if (b as usize) > seen {
            return Err(Error::BadPartition);
        }
        if (b as usize) == seen {
            seen += 1;
        }
    }
    let mut rel = Relation::empty(k, m)?;
    let choices = tuple_space(k, nblocks).ok_or(Error::BadPartition)?;
    for c in 0..choices {
        let vals = decode(c, k, nblocks);
        let t: Vec<u8> = block.iter().map(|&b| vals[b as usize]).collect();
        rel.insert(&t);
    }
    Ok(rel)
}

/// All partitions of `{0..m-1}` in canonical block-vector form.
pub fn all_partitions(m: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; m];
    fn rec(cur: &mut Vec<u8>, i: usize, maxb: u8, out: &mut Vec<Vec<u8>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=maxb + 1 {
            cur[i] = b;
            rec(cur, i + 1, maxb.max(b), out);
        }
    }
    if m > 0 {
        rec(&mut cur, 1, 0, &mut out);
    }
    out
}

/// Per-s diagonal descriptions: a partition block vector, or `None`
/// for the `top` marker (empty part).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalSpec {
    pub arity: usize,
    pub parts: Vec<Option<Vec<u8>>>,
}

/// A family of same-arity relations indexed by the monoid elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SRelation {
    k: usize,
    arity: usize,
    parts: Vec<Relation>,
}

impl SRelation {
    pub fn new(parts: Vec<Relation>) -> Result<Self> {
        let first = parts.first().ok_or_else(|| {
            Error::Malformed("signed relation needs one part per monoid element".into())
        })?;
        let (k, arity) = (first.k, first.arity);
        if parts.iter().any(|p| p.k != k || p.arity != arity) {
            return Err(Error::Malformed("parts must share domain and arity".into()));
        }
        Ok(SRelation { k, arity, parts })
    }

    pub fn empty(k: usize, arity: usize, monoid_size: usize) -> Result<Self> {
        let part = Relation::empty(k, arity)?;
        Ok(SRelation { k, arity, parts: vec![part; monoid_size] })
    }

    pub fn full(k: usize, arity: usize, monoid_size: usize) -> Result<Self> {
        let part = Relation::full(k, arity)?;
        Ok(SRelation { k, arity, parts: vec![part; monoid_size] })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn parts(&self) -> &[Relation] {
        &self.parts
    }

    pub fn part(&self, s: u8) -> &Relation {
        &self.parts[s as usize]
    }

    pub fn part_mut(&mut self, s: u8) -> &mut Relation {
        &mut self.parts[s as usize]
    }

    pub fn monoid_size(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.iter().all(Relation::is_empty)
    }

    pub fn is_subset(&self, other: &SRelation) -> bool {
        self.arity == other.arity
            && self.parts.len() == other.parts.len()
            && self.parts.iter().zip(&other.parts).all(|(a, b)| a.is_subset(b))
    }

    fn map_parts<F: Fn(&Relation) -> Relation>(&self, f: F) -> SRelation {
        let parts: Vec<Relation> = self.parts.iter().map(f).collect();
        SRelation { k: self.k, arity: parts[0].arity, parts }
    }

    pub fn zeta(&self) -> SRelation {
        self.map_parts(Relation::zeta)
    }

    pub fn tau(&self) -> SRelation {
        self.map_parts(Relation::tau)
    }

    pub fn pr(&self) -> SRelation {
        self.map_parts(Relation::pr)
    }

    pub fn pr_rows(&self, rows: &[usize]) -> Result<SRelation> {
        let parts = self
            .parts
            .iter()
            .map(|p| p.pr_rows(rows))
            .collect::<Result<Vec<_>>>()?;
        SRelation::new(parts)
    }

    pub fn product(&self, other: &SRelation) -> Result<SRelation> {
        self.zip_parts(other, |a, b| a.product(b))
    }

    pub fn meet(&self, other: &SRelation) -> Result<SRelation> {
        self.zip_parts(other, |a, b| a.meet(b))
    }

    fn zip_parts<F: Fn(&Relation, &Relation) -> Result<Relation>>(
        &self,
        other: &SRelation,
        f: F,
    ) -> Result<SRelation> {
        if self.k != other.k {
            return Err(Error::DomainMismatch(self.k, other.k));
        }
        if self.parts.len() != other.parts.len() {
            return Err(Error::Malformed("relations over different monoids".into()));
        }
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| f(a, b))
            .collect::<Result<Vec<_>>>()?;
        SRelation::new(parts)
    }

    /// Index translation: `mu_v(rho)_s = rho_{s*v}`.
    pub fn mu(&self, v: u8, monoid: &Monoid) -> SRelation {
        let parts = monoid
            .elems()
            .map(|s| self.parts[monoid.mul(s, v) as usize].clone())
            .collect();
        SRelation { k: self.k, arity: self.arity, parts }
    }

    /// M-self-intersection for a family satisfying condition (*):
    /// part `s` becomes the intersection of the parts indexed by `M_s`,
    /// with the empty intersection giving the full relation.
    pub fn m_self_intersect(&self, family: &MFamily, monoid: &Monoid) -> Result<SRelation> {
        if !family.valid && !monoid.check_m_condition(family) {
            return Err(Error::InvalidFamily);
        }
        if family.sets.len() != self.parts.len() {
            return Err(Error::InvalidFamily);
        }
        let parts = family
            .sets
            .iter()
            .map(|set| {
                let mut acc = Relation::full(self.k, self.arity)?;
                for sp in set.iter() {
                    acc.members.intersect_with(&self.parts[sp as usize].members);
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        SRelation::new(parts)
    }

    /// v-self-intersection, the M-self-intersection of the right
    /// multiplication preimage family.
    pub fn self_intersect(&self, v: u8, monoid: &Monoid) -> Result<SRelation> {
        self.m_self_intersect(&monoid.m_family(v), monoid)
    }

    pub fn pi_dual(&self, pi: &[u8]) -> SRelation {
        self.map_parts(|p| p.pi_dual(pi))
    }

    /// Reindexing by a monoid automorphism: part `s` becomes the part
    /// at `h^{-1}(s)`.
    pub fn h_map(&self, h: &[u8]) -> SRelation {
        let mut h_inv = vec![0u8; h.len()];
        for (i, &x) in h.iter().enumerate() {
            h_inv[x as usize] = i as u8;
        }
        let parts = (0..self.parts.len())
            .map(|s| self.parts[h_inv[s] as usize].clone())
            .collect();
        SRelation { k: self.k, arity: self.arity, parts }
    }

    /// Listing form: the signum with one entry per listed column plus
    /// the columns themselves, parts in element order, tuples in codec
    /// order within each part.
    pub fn listing(&self) -> (Signum, Vec<Vec<u8>>) {
        let mut signum = Vec::new();
        let mut columns = Vec::new();
        for (s, part) in self.parts.iter().enumerate() {
            for t in part.tuples() {
                signum.push(s as u8);
                columns.push(t);
            }
        }
        (Signum(signum), columns)
    }

    pub fn canonical_key(&self) -> Vec<u8> {
        let mut key = Vec::new();
        key.extend_from_slice(&(self.k as u16).to_be_bytes());
        key.extend_from_slice(&(self.arity as u16).to_be_bytes());
        key.extend_from_slice(&(self.parts.len() as u16).to_be_bytes());
        for p in &self.parts {
            key.extend_from_slice(&p.members.to_bytes());
        }
        key
    }
}

/// `delta^S`: the binary all-diagonal family.
pub fn delta_s(k: usize, monoid_size: usize) -> SRelation {
    SRelation::new(vec![Relation::diagonal(k); monoid_size]).unwrap()
}

pub fn make_diagonal(k: usize, spec: &DiagonalSpec, monoid: &Monoid) -> Result<SRelation> {
    if spec.parts.len() != monoid.size() {
        return Err(Error::BadPartition);
    }
    let parts = spec
        .parts
        .iter()
        .map(|p| match p {
            Some(block) if block.len() == spec.arity => diagonal_of_partition(k, block),
            Some(_) => Err(Error::BadPartition),
            None => Relation::empty(k, spec.arity),
        })
        .collect::<Result<Vec<_>>>()?;
    SRelation::new(parts)
}

/// True iff every part is a diagonal relation (or empty) and the
/// left-ideal monotonicity condition holds: `Ss subseteq St` implies
/// part `s` is contained in part `t`.
pub fn is_s_diagonal(rho: &SRelation, monoid: &Monoid) -> bool {
    if rho.monoid_size() != monoid.size() {
        return false;
    }
    for part in rho.parts() {
        if !part.is_empty() && part.diagonal_partition().is_none() {
            return false;
        }
    }
    for s in monoid.elems() {
        for t in monoid.elems() {
            if monoid.left_ideal(s).is_subset(monoid.left_ideal(t))
                && !rho.part(s).is_subset(rho.part(t))
            {
                return false;
            }
        }
    }
    true
}

/// Componentwise application of `f` to columns of length `m`.
pub fn apply_op(f: &SignedOp, columns: &[&[u8]]) -> Result<Vec<u8>> {
    if columns.len() != f.arity() {
        return Err(Error::ArityMismatch { expected: f.arity(), got: columns.len() });
    }
    let m = columns.first().map_or(0, |c| c.len());
    if columns.iter().any(|c| c.len() != m) {
        return Err(Error::Malformed("columns of unequal length".into()));
    }
    let mut out = Vec::with_capacity(m);
    let mut args = vec![0u8; f.arity()];
    for row in 0..m {
        for (j, c) in columns.iter().enumerate() {
            args[j] = c[row];
        }
        out.push(f.eval(&args)?);
    }
    Ok(out)
}

/// Parses parts given as tuple lists keyed by element name; omitted
/// names mean empty parts.
pub fn srelation_from_named_parts(
    k: usize,
    arity: usize,
    named: &BTreeMap<String, Vec<Vec<u8>>>,
    monoid: &Monoid,
) -> Result<SRelation> {
    let mut parts = vec![Relation::empty(k, arity)?; monoid.size()];
    for (name, tuples) in named {
        let s = monoid.element_index(name)?;
        parts[s as usize] = Relation::from_tuples(k, arity, tuples)?;
    }
    SRelation::new(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z2() -> Monoid {
        Monoid::builtin("z2").unwrap()
    }
    fn sprime() -> Monoid {
        Monoid::builtin("sprime").unwrap()
    }

    fn leq() -> Relation {
        Relation::from_tuples(2, 2, &[vec![0, 0], vec![0, 1], vec![1, 1]]).unwrap()
    }
    fn geq() -> Relation {
        Relation::from_tuples(2, 2, &[vec![0, 0], vec![1, 0], vec![1, 1]]).unwrap()
    }

    /// The order pair (leq, geq) over Z2.
    pub(crate) fn leq_geq() -> SRelation {
        SRelation::new(vec![leq(), geq()]).unwrap()
    }

    #[test]
    fn unary_row_ops_fixed() {
        let rho = SRelation::new(vec![
            Relation::from_tuples(2, 1, &[vec![0]]).unwrap(),
            Relation::empty(2, 1).unwrap(),
        ])
        .unwrap();
        assert_eq!(rho.zeta(), rho);
        assert_eq!(rho.tau(), rho);
        assert_eq!(rho.pr(), rho);
    }

    #[test]
    fn tau_swaps_leq_geq() {
        let rho = leq_geq();
        let swapped = SRelation::new(vec![geq(), leq()]).unwrap();
        assert_eq!(rho.tau(), swapped);
    }

    #[test]
    fn pr_of_full_binary_is_full_unary() {
        let rho = SRelation::full(2, 2, 2).unwrap();
        assert_eq!(rho.pr(), SRelation::full(2, 1, 2).unwrap());
    }

    #[test]
    fn meet_mismatched_arity_is_empty_of_first_arity() {
        let a = SRelation::full(2, 1, 2).unwrap();
        let b = SRelation::full(2, 2, 2).unwrap();
        assert_eq!(a.meet(&b).unwrap(), SRelation::empty(2, 1, 2).unwrap());
        assert_eq!(b.meet(&a).unwrap(), SRelation::empty(2, 2, 2).unwrap());
    }

    #[test]
    fn product_adds_arity_and_meet_is_idempotent() {
        let rho = leq_geq();
        assert_eq!(rho.product(&rho).unwrap().arity(), 4);
        assert_eq!(rho.meet(&rho).unwrap(), rho);
    }

    #[test]
    fn pr_rows_laws() {
        let rho = leq_geq();
        // pr = pr_{2..m}
        assert_eq!(rho.pr_rows(&[1]).unwrap(), rho.pr());
        // duplicated row on the diagonal reproduces the diagonal
        let d = delta_s(2, 2);
        let unary = d.pr_rows(&[0]).unwrap();
        assert_eq!(unary.pr_rows(&[0, 0]).unwrap(), d);
        // identity selection
        assert_eq!(rho.pr_rows(&[0, 1]).unwrap(), rho);
        // composition
        let z = rho.pr_rows(&[1, 0]).unwrap().pr_rows(&[1, 1]).unwrap();
        assert_eq!(z, rho.pr_rows(&[0, 0]).unwrap());
        assert!(matches!(rho.pr_rows(&[2]), Err(Error::BadRowIndex(2, 2))));
    }

    #[test]
    fn mu_examples() {
        let m = z2();
        let rho = leq_geq();
        assert_eq!(rho.mu(m.unit(), &m), rho);
        assert_eq!(rho.mu(1, &m), SRelation::new(vec![geq(), leq()]).unwrap());

        let sp = sprime();
        let o = sp.element_index("o").unwrap();
        let rho = SRelation::new(vec![leq(), geq()]).unwrap();
        let t = rho.mu(o, &sp);
        assert_eq!(t.part(0), &geq()); // rho_{+*o} = rho_o
        assert_eq!(t.part(1), &geq());
    }

    #[test]
    fn mu_composes_via_monoid() {
        let sp = sprime();
        let rho = SRelation::new(vec![leq(), geq()]).unwrap();
        for v in sp.elems() {
            for w in sp.elems() {
                let lhs = rho.mu(v, &sp).mu(w, &sp);
                let rhs = rho.mu(sp.mul(w, v), &sp);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn self_intersect_group_is_inverse_translation() {
        let m = z2();
        let rho = leq_geq();
        for v in m.elems() {
            let vi = m.inverse(v).unwrap();
            assert_eq!(rho.self_intersect(v, &m).unwrap(), rho.mu(vi, &m));
        }
    }

    #[test]
    fn self_intersect_sprime_zero() {
        let sp = sprime();
        let o = sp.element_index("o").unwrap();
        let rho = SRelation::new(vec![leq(), geq()]).unwrap();
        let r = rho.self_intersect(o, &sp).unwrap();
        assert!(r.part(0).is_full()); // M_+ empty: intersection over nothing
        assert_eq!(r.part(o), &leq().meet(&geq()).unwrap()); // M_o = {+, o}
    }

    #[test]
    fn t_family_intersection_is_mu() {
        for name in ["z2", "sprime", "shat"] {
            let m = Monoid::builtin(name).unwrap();
            let rho = SRelation::new(vec![leq(); m.size()]).unwrap();
            let mut rho = rho;
            // make parts distinct so the test has teeth
            for s in m.elems() {
                if s as usize % 2 == 1 {
                    *rho.part_mut(s) = geq();
                }
            }
            for v in m.elems() {
                let fam = m.t_family(v);
                if fam.valid {
                    assert_eq!(rho.m_self_intersect(&fam, &m).unwrap(), rho.mu(v, &m));
                }
            }
        }
    }

    #[test]
    fn m_self_intersect_rejects_bad_family() {
        use crate::monoid::ElemSet;
        let m = z2();
        let fam = MFamily { sets: vec![ElemSet(0b11), ElemSet::EMPTY], valid: false };
        assert!(matches!(
            leq_geq().m_self_intersect(&fam, &m),
            Err(Error::InvalidFamily)
        ));
    }

    #[test]
    fn m_self_intersect_lower_bound() {
        let sp = sprime();
        let rho = SRelation::new(vec![leq(), geq()]).unwrap();
        for v in sp.elems() {
            let fam = sp.m_family(v);
            let out = rho.m_self_intersect(&fam, &sp).unwrap();
            for s in sp.elems() {
                for sp2 in fam.sets[s as usize].iter() {
                    assert!(out.part(s).is_subset(rho.part(sp2)));
                }
            }
        }
    }

    #[test]
    fn delta_s_parts() {
        let d = delta_s(2, 2);
        for s in 0..2u8 {
            assert!(d.part(s).contains(&[0, 0]));
            assert!(d.part(s).contains(&[1, 1]));
            assert!(!d.part(s).contains(&[0, 1]));
        }
    }

    #[test]
    fn diagonal_spec_and_predicate() {
        let m = z2();
        // group: parts must agree
        let mixed = make_diagonal(
            2,
            &DiagonalSpec { arity: 2, parts: vec![Some(vec![0, 0]), Some(vec![0, 1])] },
            &m,
        )
        .unwrap();
        assert!(!is_s_diagonal(&mixed, &m));
        assert!(is_s_diagonal(&delta_s(2, 2), &m));

        // S': (Delta, empty) passes, (empty, Delta) fails the ideal condition
        let sp = sprime();
        let good = make_diagonal(
            2,
            &DiagonalSpec { arity: 2, parts: vec![Some(vec![0, 0]), None] },
            &sp,
        )
        .unwrap();
        assert!(is_s_diagonal(&good, &sp));
        let bad = make_diagonal(
            2,
            &DiagonalSpec { arity: 2, parts: vec![None, Some(vec![0, 0])] },
            &sp,
        )
        .unwrap();
        assert!(!is_s_diagonal(&bad, &sp));

        // non-diagonal part
        assert!(!is_s_diagonal(&leq_geq(), &m));
    }

    #[test]
    fn partitions_enumeration() {
        assert_eq!(all_partitions(1), vec![vec![0]]);
        assert_eq!(all_partitions(2).len(), 2);
        assert_eq!(all_partitions(3).len(), 5);
        for block in all_partitions(3) {
            let d = diagonal_of_partition(2, &block).unwrap();
            assert_eq!(d.diagonal_partition().unwrap(), block);
        }
    }

    #[test]
    fn apply_op_examples() {
        let id = SignedOp::identity(2, 0);
        assert_eq!(apply_op(&id, &[&[0, 1]]).unwrap(), vec![0, 1]);
        let nor = SignedOp::new(2, Signum(vec![0, 0]), vec![1, 0, 0, 0]).unwrap();
        assert_eq!(apply_op(&nor, &[&[0, 1], &[0, 1]]).unwrap(), vec![1, 0]);
        let c1 = SignedOp::new(2, Signum(vec![0]), vec![1, 1]).unwrap();
        assert_eq!(apply_op(&c1, &[&[0, 1]]).unwrap(), vec![1, 1]);
    }

    #[test]
    fn duals() {
        let rho = leq_geq();
        let idp = [0u8, 1];
        assert_eq!(rho.pi_dual(&idp), rho);
        let swap = [1u8, 0];
        // pi-image of leq is geq
        assert_eq!(rho.pi_dual(&swap), SRelation::new(vec![geq(), leq()]).unwrap());
        let z3 = Monoid::builtin("z3").unwrap();
        let rho3 = SRelation::new(vec![leq(), geq(), Relation::diagonal(2)]).unwrap();
        let h = &z3.automorphisms()[1];
        let mut h_inv = vec![0u8; 3];
        for (i, &x) in h.iter().enumerate() {
            h_inv[x as usize] = i as u8;
        }
        let mapped = rho3.h_map(h);
        for s in 0..3u8 {
            assert_eq!(mapped.part(s), rho3.part(h_inv[s as usize]));
        }
        assert_eq!(mapped.h_map(&h_inv), rho3);
    }

    #[test]
    fn listing_roundtrip() {
        let rho = leq_geq();
        let (signum, columns) = rho.listing();
        assert_eq!(signum.len(), 6);
        assert_eq!(signum.0, vec![0, 0, 0, 1, 1, 1]);
        assert_eq!(columns[0], vec![0, 0]);
        // rebuild
        let mut back = SRelation::empty(2, 2, 2).unwrap();
        for (s, col) in signum.0.iter().zip(&columns) {
            back.part_mut(*s).insert(col);
        }
        assert_eq!(back, rho);
    }

    proptest! {
        #[test]
        fn product_meet_commute_with_duals(
            bits_a in proptest::collection::vec(any::<bool>(), 8),
            bits_b in proptest::collection::vec(any::<bool>(), 8),
        ) {
            let mk = |bits: &[bool]| {
                let parts = (0..2).map(|s| {
                    let mut r = Relation::empty(2, 2).unwrap();
                    for i in 0..4 {
                        if bits[s * 4 + i] {
                            r.insert_index(i);
                        }
                    }
                    r
                }).collect();
                SRelation::new(parts).unwrap()
            };
            let a = mk(&bits_a);
            let b = mk(&bits_b);
            let swap = [1u8, 0];
            prop_assert_eq!(
                a.product(&b).unwrap().pi_dual(&swap),
                a.pi_dual(&swap).product(&b.pi_dual(&swap)).unwrap()
            );
            prop_assert_eq!(
                a.meet(&b).unwrap().pi_dual(&swap),
                a.pi_dual(&swap).meet(&b.pi_dual(&swap)).unwrap()
            );
            let h = [1u8, 0]; // not an automorphism of z2, but reindexing still commutes
            prop_assert_eq!(
                a.meet(&b).unwrap().h_map(&h),
                a.h_map(&h).meet(&b.h_map(&h)).unwrap()
            );
        }
    }
}
