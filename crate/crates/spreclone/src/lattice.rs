//! Bounded exploration of the lattice of signed preclones: generator
//! checks, minimal and maximal searches within the arity bounds,
//! embeddings of the classical clone lattice, and symmetry orbits.
//!
//! Every claim in this module is relative to the configured caps:
//! equality of handles means equality of their bounded fragments.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::galois::{self, MembershipOracle};
use crate::monoid::Monoid;
use crate::ops::{SignedOp, Signum, UnsignedOp};
use crate::rel::{all_partitions, diagonal_of_partition, Relation, SRelation};

/// A preclone given by generators, with a cached membership oracle.
pub struct PrecloneHandle {
    oracle: MembershipOracle,
}

impl PrecloneHandle {
    pub fn new(mut gens: Vec<SignedOp>, monoid: &Monoid) -> PrecloneHandle {
        gens.sort();
        gens.dedup();
        PrecloneHandle { oracle: MembershipOracle::new(gens, monoid) }
    }

    pub fn gens(&self) -> &[SignedOp] {
        self.oracle.gens()
    }

    pub fn monoid(&self) -> &Monoid {
        self.oracle.monoid()
    }

    pub fn member(&self, f: &SignedOp) -> Result<bool> {
        self.oracle.member(f)
    }

    /// Lexicographically least canonical generator key; ties in
    /// reports are broken by this value.
    pub fn key(&self) -> Vec<u8> {
        self.gens().iter().map(|f| f.canonical_key()).min().unwrap_or_default()
    }

    /// All members up to the arity cap, decided by the closure test.
    pub fn fragment(&self, k: usize, arity_cap: usize) -> Result<BTreeSet<SignedOp>> {
        let mut out = BTreeSet::new();
        for arity in 1..=arity_cap {
            for f in galois::enumerate_ops(k, self.monoid(), arity)? {
                if self.member(&f)? {
                    out.insert(f);
                }
            }
        }
        Ok(out)
    }
}

/// The binary Sheffer operation `m(x,y) = max(x,y) + 1 (mod k)`.
pub fn sheffer_op(k: usize) -> Result<UnsignedOp> {
    let mut values = Vec::with_capacity(k * k);
    for x in 0..k {
        for y in 0..k {
            values.push(((x.max(y) + 1) % k) as u8);
        }
    }
    UnsignedOp::new(k, 2, values)
}

#[derive(Debug, Clone)]
pub struct GenerationReport {
    pub k: usize,
    pub arity_cap: usize,
    pub checked: usize,
    pub failures: Vec<SignedOp>,
}

impl GenerationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `{m^(e,e)} + {id^s}` generates every signed operation
/// up to the cap, where `m` is the binary Sheffer operation.
pub fn sheffer_generation_check(
    k: usize,
    monoid: &Monoid,
    arity_cap: usize,
) -> Result<GenerationReport> {
    let e = monoid.unit();
    let mut gens =
        vec![sheffer_op(k)?.with_signum(Signum(vec![e, e]))?];
    for s in monoid.elems() {
        gens.push(SignedOp::identity(k, s));
    }
    let handle = PrecloneHandle::new(gens, monoid);
    let mut checked = 0;
    let mut failures = Vec::new();
    for arity in 1..=arity_cap {
        for f in galois::enumerate_ops(k, monoid, arity)? {
            checked += 1;
            if !handle.member(&f)? {
                failures.push(f);
            }
        }
    }
    Ok(GenerationReport { k, arity_cap, checked, failures })
}

/// The three binary generator relations: `(diag, full, ..., full)`,
/// `(leq, ..., leq)` and `(neq, ..., neq)`.
pub fn generator_relations(k: usize, monoid: &Monoid) -> Result<Vec<SRelation>> {
    let size = monoid.size();
    let e = monoid.unit() as usize;
    let mut leq = Relation::empty(k, 2)?;
    let mut neq = Relation::empty(k, 2)?;
    for a in 0..k as u8 {
        for b in 0..k as u8 {
            if a <= b {
                leq.insert(&[a, b]);
            }
            if a != b {
                neq.insert(&[a, b]);
            }
        }
    }
    let mut diag_parts = vec![Relation::full(k, 2)?; size];
    diag_parts[e] = Relation::diagonal(k);
    Ok(vec![
        SRelation::new(diag_parts)?,
        SRelation::new(vec![leq; size])?,
        SRelation::new(vec![neq; size])?,
    ])
}

/// Checks that the three generator relations admit only trivial
/// projections as polymorphisms up to the op cap. Defined for k >= 3;
/// the two-element case needs a ternary relation instead and is
/// rejected.
pub fn relational_generation_check(
    k: usize,
    monoid: &Monoid,
    op_cap: usize,
) -> Result<GenerationReport> {
    if k < 3 {
        return Err(Error::UnsupportedDomain(k));
    }
    let q = generator_relations(k, monoid)?;
    let polys = galois::spol(&q, op_cap, k, monoid)?;
    let failures: Vec<SignedOp> =
        polys.into_iter().filter(|f| !f.is_trivial_projection(monoid)).collect();
    let mut checked = 0;
    for arity in 1..=op_cap {
        checked += galois::enumerate_ops(k, monoid, arity)?.len();
    }
    Ok(GenerationReport { k, arity_cap: op_cap, checked, failures })
}

/// Candidate atoms of the lattice: handles generated by single
/// nontrivial operations of arity up to `min(cap, |A^2| * |S|)` whose
/// fragments contain no strictly smaller nontrivial handle. Exact
/// within the tested universe.
pub fn minimal_search(
    k: usize,
    monoid: &Monoid,
    arity_cap: usize,
) -> Result<Vec<PrecloneHandle>> {
    let bound = k * k * monoid.size();
    let limit = arity_cap.min(bound);
    let mut universe = Vec::new();
    for arity in 1..=limit {
        for f in galois::enumerate_ops(k, monoid, arity)? {
            if !f.is_trivial_projection(monoid) {
                universe.push(f);
            }
        }
    }
    let n = universe.len();
    let handles: Vec<PrecloneHandle> = universe
        .iter()
        .map(|g| PrecloneHandle::new(vec![g.clone()], monoid))
        .collect();
    // below[i][j]: universe[i] is a member of the preclone of
    // universe[j]
    let mut below = vec![vec![false; n]; n];
    for j in 0..n {
        for i in 0..n {
            below[i][j] = handles[j].member(&universe[i])?;
        }
    }
    let mut out: Vec<PrecloneHandle> = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    for j in 0..n {
        // minimal: everything below j is also above it
        let minimal = (0..n).all(|i| !below[i][j] || below[j][i]);
        if !minimal {
            continue;
        }
        // one representative per mutual-membership class
        if seen.iter().any(|&r| below[j][r] && below[r][j]) {
            continue;
        }
        seen.push(j);
        out.push(PrecloneHandle::new(vec![universe[j].clone()], monoid));
    }
    out.sort_by_key(|h| h.key());
    Ok(out)
}

/// The five Boolean maximal-clone witness relations of a given arity,
/// closed under coordinate permutations (external background data:
/// the relations defining the five maximal Post clones).
pub fn boolean_maximal_witnesses(arity: usize) -> Result<Vec<Relation>> {
    match arity {
        1 => Ok(vec![
            Relation::from_tuples(2, 1, &[vec![0]])?,
            Relation::from_tuples(2, 1, &[vec![1]])?,
        ]),
        2 => {
            let leq =
                Relation::from_tuples(2, 2, &[vec![0, 0], vec![0, 1], vec![1, 1]])?;
            let geq =
                Relation::from_tuples(2, 2, &[vec![0, 0], vec![1, 0], vec![1, 1]])?;
            let neq = Relation::from_tuples(2, 2, &[vec![0, 1], vec![1, 0]])?;
            Ok(vec![leq, geq, neq])
        }
        4 => {
            let mut affine = Relation::empty(2, 4)?;
            for t in 0..16u8 {
                let bits = [t >> 3 & 1, t >> 2 & 1, t >> 1 & 1, t & 1];
                if bits.iter().fold(0, |a, b| a ^ b) == 0 {
                    affine.insert(&bits);
                }
            }
            Ok(vec![affine])
        }
        _ => Err(Error::Malformed(format!("no witness of arity {arity}"))),
    }
}

#[derive(Debug, Clone)]
pub struct MaximalCandidate {
    pub relation: SRelation,
    /// Index into the deduplicated handle list.
    pub handle_index: usize,
}

pub struct MaximalReport {
    pub op_cap: usize,
    pub candidates: Vec<MaximalCandidate>,
    pub handles: Vec<PrecloneHandle>,
    pub fragments: Vec<BTreeSet<SignedOp>>,
    /// inclusion[i][j]: fragment i is a subset of fragment j.
    pub inclusion: Vec<Vec<bool>>,
    /// Count of distinct proper candidates, to be compared against
    /// the reference count of 9 maximal Boolean preclones over the
    /// two-element group. Reported, not asserted.
    pub distinct_proper: usize,
    pub reference_count: usize,
}

/// Builds candidate relations whose parts are diagonals or Boolean
/// maximal-clone witnesses of a shared arity, takes their bounded
/// polymorphism fragments and reports the inclusion structure.
pub fn maximal_candidates(
    k: usize,
    monoid: &Monoid,
    op_cap: usize,
) -> Result<MaximalReport> {
    if k != 2 {
        return Err(Error::UnsupportedDomain(k));
    }
    let size = monoid.size();
    let mut relations: Vec<SRelation> = Vec::new();
    for arity in [1usize, 2, 4] {
        let witnesses = boolean_maximal_witnesses(arity)?;
        let mut choices: Vec<(Relation, bool)> =
            witnesses.into_iter().map(|r| (r, true)).collect();
        choices.push((Relation::empty(k, arity)?, false));
        for block in all_partitions(arity) {
            choices.push((diagonal_of_partition(k, &block)?, false));
        }
        // mixed-radix enumeration of one choice per monoid element
        let base = choices.len();
        let mut total = 1usize;
        for _ in 0..size {
            total = total.saturating_mul(base);
        }
        for code in 0..total {
            let mut c = code;
            let mut parts = Vec::with_capacity(size);
            let mut nontrivial = false;
            for _ in 0..size {
                let (rel, witness) = &choices[c % base];
                nontrivial |= witness;
                parts.push(rel.clone());
                c /= base;
            }
            if nontrivial {
                relations.push(SRelation::new(parts)?);
            }
        }
    }

    let mut handles: Vec<PrecloneHandle> = Vec::new();
    let mut fragments: Vec<BTreeSet<SignedOp>> = Vec::new();
    let mut candidates = Vec::new();
    let full_count: usize = {
        let mut n = 0;
        for arity in 1..=op_cap {
            n += galois::enumerate_ops(k, monoid, arity)?.len();
        }
        n
    };
    let mut distinct_proper = 0;
    for rho in relations {
        let polys = galois::spol(std::slice::from_ref(&rho), op_cap, k, monoid)?;
        let fragment: BTreeSet<SignedOp> = polys.into_iter().collect();
        let handle_index = match fragments.iter().position(|f| *f == fragment) {
            Some(i) => i,
            None => {
                if fragment.len() < full_count {
                    distinct_proper += 1;
                }
                handles.push(PrecloneHandle::new(
                    fragment.iter().cloned().collect(),
                    monoid,
                ));
                fragments.push(fragment);
                handles.len() - 1
            }
        };
        candidates.push(MaximalCandidate { relation: rho, handle_index });
    }
    let n = fragments.len();
    let mut inclusion = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            inclusion[i][j] = fragments[i].is_subset(&fragments[j]);
        }
    }
    Ok(MaximalReport {
        op_cap,
        candidates,
        handles,
        fragments,
        inclusion,
        distinct_proper,
        reference_count: 9,
    })
}

/// The embedding that decorates every generator with the all-unit
/// signum; members of the image have essential arguments only at the
/// unit signum.
pub fn psi_embed(clone_gens: &[UnsignedOp], monoid: &Monoid) -> Result<PrecloneHandle> {
    let e = monoid.unit();
    let mut gens = Vec::with_capacity(clone_gens.len());
    for f in clone_gens {
        gens.push(f.with_signum(Signum(vec![e; f.arity]))?);
    }
    Ok(PrecloneHandle::new(gens, monoid))
}

/// The embedding whose image contains every signum decoration of
/// every generated unsigned operation. For a group this is generated
/// by the unit-decorated generators plus all `id^s`; otherwise the
/// decorations of the generated unsigned fragment (up to `arity_cap`)
/// are enumerated explicitly.
pub fn phi_embed(
    clone_gens: &[UnsignedOp],
    k: usize,
    monoid: &Monoid,
    arity_cap: usize,
) -> Result<PrecloneHandle> {
    let e = monoid.unit();
    let mut gens: Vec<SignedOp> =
        monoid.elems().map(|s| SignedOp::identity(k, s)).collect();
    if monoid.is_group() {
        for f in clone_gens {
            gens.push(f.with_signum(Signum(vec![e; f.arity]))?);
        }
        return Ok(PrecloneHandle::new(gens, monoid));
    }
    let decorated: Vec<SignedOp> = clone_gens
        .iter()
        .map(|f| f.with_signum(Signum(vec![e; f.arity])))
        .collect::<Result<_>>()?;
    for arity in 1..=arity_cap {
        let signa = all_signa(arity, monoid.size());
        for table in all_tables(k, arity)? {
            if !galois::underlying_clone_membership(&table, &decorated)? {
                continue;
            }
            for signum in &signa {
                gens.push(table.with_signum(Signum(signum.clone()))?);
            }
        }
    }
    Ok(PrecloneHandle::new(gens, monoid))
}

/// Strips signa from the bounded fragment, giving generators of the
/// underlying clone.
pub fn phi_inverse(
    handle: &PrecloneHandle,
    k: usize,
    arity_cap: usize,
) -> Result<Vec<UnsignedOp>> {
    let fragment = handle.fragment(k, arity_cap)?;
    let set: BTreeSet<UnsignedOp> = fragment.iter().map(|f| f.underlying()).collect();
    Ok(set.into_iter().collect())
}

fn all_signa(arity: usize, size: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..arity {
        let mut next = Vec::new();
        for prefix in &out {
            for s in 0..size as u8 {
                let mut v = prefix.clone();
                v.push(s);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn all_tables(k: usize, arity: usize) -> Result<Vec<UnsignedOp>> {
    let space = crate::codec::tuple_space(k, arity)
        .ok_or_else(|| Error::CapExceeded(format!("tuple space {k}^{arity}")))?;
    let mut count = 1usize;
    for _ in 0..space {
        count = count
            .checked_mul(k)
            .ok_or_else(|| Error::CapExceeded(format!("{k}^{space} tables")))?;
    }
    let mut out = Vec::with_capacity(count);
    for code in 0..count {
        let mut c = code;
        let mut values = vec![0u8; space];
        for v in values.iter_mut().rev() {
            *v = (c % k) as u8;
            c /= k;
        }
        out.push(UnsignedOp::new(k, arity, values)?);
    }
    Ok(out)
}

/// Applies each pair of a base permutation and a monoid automorphism
/// generator-wise, deduplicating images by bounded-fragment equality.
pub fn symmetry_orbit(
    handle: &PrecloneHandle,
    pis: &[Vec<u8>],
    hs: &[Vec<u8>],
    k: usize,
    arity_cap: usize,
) -> Result<Vec<PrecloneHandle>> {
    let monoid = handle.monoid().clone();
    let mut out: Vec<PrecloneHandle> = Vec::new();
    let mut fragments: Vec<BTreeSet<SignedOp>> = Vec::new();
    for pi in pis {
        for h in hs {
            let gens: Vec<SignedOp> = handle
                .gens()
                .iter()
                .map(|f| f.pi_dual(pi).h_map(h))
                .collect();
            let image = PrecloneHandle::new(gens, &monoid);
            let fragment = image.fragment(k, arity_cap)?;
            if !fragments.contains(&fragment) {
                fragments.push(fragment);
                out.push(image);
            }
        }
    }
    out.sort_by_key(|h| h.key());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Monoid {
        Monoid::builtin("z2").unwrap()
    }

    fn op(signum: Vec<u8>, values: Vec<u8>) -> SignedOp {
        SignedOp::new(2, Signum(signum), values).unwrap()
    }

    #[test]
    fn sheffer_table() {
        let m2 = sheffer_op(2).unwrap();
        // max(x,y) + 1 mod 2 is NOR on {0,1}
        assert_eq!(m2.values, vec![1, 0, 0, 0]);
        let m3 = sheffer_op(3).unwrap();
        assert_eq!(m3.eval(&[1, 2]).unwrap(), 0);
        assert_eq!(m3.eval(&[0, 0]).unwrap(), 1);
    }

    #[test]
    fn sheffer_generation_binary_domain() {
        let m = z2();
        let report = sheffer_generation_check(2, &m, 2).unwrap();
        assert_eq!(report.checked, 72);
        assert!(report.ok(), "failures: {:?}", report.failures);
    }

    #[test]
    fn sheffer_generation_ternary_domain_unary_cap() {
        let m = Monoid::builtin("trivial").unwrap();
        let report = sheffer_generation_check(3, &m, 1).unwrap();
        assert_eq!(report.checked, 27);
        assert!(report.ok(), "failures: {:?}", report.failures);
    }

    #[test]
    fn identity_ops_are_members_trivially() {
        let m = z2();
        let gens = vec![
            sheffer_op(2).unwrap().with_signum(Signum(vec![0, 0])).unwrap(),
            SignedOp::identity(2, 1),
        ];
        let handle = PrecloneHandle::new(gens, &m);
        for s in m.elems() {
            assert!(handle.member(&SignedOp::identity(2, s)).unwrap());
        }
    }

    #[test]
    fn relational_generation_rejects_binary_domain() {
        let m = z2();
        assert!(matches!(
            relational_generation_check(2, &m, 2),
            Err(Error::UnsupportedDomain(2))
        ));
    }

    #[test]
    fn relational_generation_unary_spol_is_trivial() {
        let m = z2();
        let report = relational_generation_check(3, &m, 1).unwrap();
        assert!(report.ok(), "failures: {:?}", report.failures);
    }

    #[test]
    fn minimal_search_unary_universe() {
        let m = z2();
        let atoms = minimal_search(2, &m, 1).unwrap();
        // five atoms among the seven nontrivial unary signed ops:
        // id^-, not^+, not^-, const0^+, const1^+ (signed constants
        // regenerate their unit-signum version but not vice versa)
        assert_eq!(atoms.len(), 5);
        let id_minus = SignedOp::identity(2, 1);
        assert!(atoms.iter().any(|h| h.gens() == [id_minus.clone()]));
        // each atom is generated by each of its nontrivial members,
        // and atoms are pairwise incomparable
        for (i, a) in atoms.iter().enumerate() {
            for (j, b) in atoms.iter().enumerate() {
                if i != j {
                    assert!(!a.member(&b.gens()[0]).unwrap());
                }
            }
        }
    }

    #[test]
    fn maximal_report_contains_leq_geq() {
        let m = z2();
        let report = maximal_candidates(2, &m, 1).unwrap();
        let leq = Relation::from_tuples(2, 2, &[vec![0, 0], vec![0, 1], vec![1, 1]])
            .unwrap();
        let geq = Relation::from_tuples(2, 2, &[vec![0, 0], vec![1, 0], vec![1, 1]])
            .unwrap();
        let target = SRelation::new(vec![leq, geq]).unwrap();
        let hit = report
            .candidates
            .iter()
            .find(|c| c.relation == target)
            .expect("(leq, geq) must be a candidate");
        // its unary polymorphisms: id^+, not^-, const0 and const1
        // with both signa
        assert_eq!(report.fragments[hit.handle_index].len(), 6);
        // no all-diagonal candidate was generated
        for c in &report.candidates {
            assert!(c
                .relation
                .parts()
                .iter()
                .any(|p| p.diagonal_partition().is_none() && !p.is_empty()));
        }
        assert_eq!(report.reference_count, 9);
    }

    #[test]
    fn psi_of_nothing_is_trivial_projections() {
        let m = z2();
        let handle = psi_embed(&[], &m).unwrap();
        let fragment = handle.fragment(2, 2).unwrap();
        assert!(fragment.iter().all(|f| f.is_trivial_projection(&m)));
        assert_eq!(fragment.len(), 5); // id^e and four binary paddings
    }

    #[test]
    fn phi_of_nothing_is_signed_identities() {
        let m = z2();
        let a = phi_embed(&[], 2, &m, 2).unwrap();
        let b = PrecloneHandle::new(
            m.elems().map(|s| SignedOp::identity(2, s)).collect(),
            &m,
        );
        assert_eq!(a.fragment(2, 2).unwrap(), b.fragment(2, 2).unwrap());
    }

    #[test]
    fn psi_members_essential_only_at_unit() {
        let m = z2();
        let and = UnsignedOp::new(2, 2, vec![0, 0, 0, 1]).unwrap();
        let handle = psi_embed(&[and], &m).unwrap();
        for f in handle.fragment(2, 2).unwrap() {
            for (pos, &s) in f.signum().0.iter().enumerate() {
                if s == m.unit() {
                    continue;
                }
                // argument with non-unit signum must be fictitious
                let g = f.underlying();
                for index in 0..g.values.len() {
                    let mut tuple = crate::codec::decode(index, 2, f.arity());
                    tuple[pos] ^= 1;
                    let flipped = crate::codec::encode(&tuple, 2);
                    assert_eq!(g.values[index], g.values[flipped]);
                }
            }
        }
    }

    #[test]
    fn psi_preserves_order_on_samples() {
        let m = z2();
        let and = UnsignedOp::new(2, 2, vec![0, 0, 0, 1]).unwrap();
        let or = UnsignedOp::new(2, 2, vec![0, 1, 1, 1]).unwrap();
        let small = psi_embed(&[and.clone()], &m).unwrap();
        let large = psi_embed(&[and, or], &m).unwrap();
        let fs = small.fragment(2, 2).unwrap();
        let fl = large.fragment(2, 2).unwrap();
        assert!(fs.is_subset(&fl));
        assert!(fs.len() < fl.len());
    }

    #[test]
    fn phi_inverse_regenerates_the_clone() {
        let m = z2();
        let and = UnsignedOp::new(2, 2, vec![0, 0, 0, 1]).unwrap();
        let embedded = phi_embed(&[and.clone()], 2, &m, 2).unwrap();
        let stripped = phi_inverse(&embedded, 2, 2).unwrap();
        // the stripped set generates the same unsigned fragment as
        // the original generator
        let orig = vec![and.with_signum(Signum(vec![0, 0])).unwrap()];
        let regen: Vec<SignedOp> = stripped
            .iter()
            .map(|f| f.with_signum(Signum(vec![0; f.arity])).unwrap())
            .collect();
        for table in all_tables(2, 2).unwrap() {
            assert_eq!(
                galois::underlying_clone_membership(&table, &orig).unwrap(),
                galois::underlying_clone_membership(&table, &regen).unwrap()
            );
        }
    }

    #[test]
    fn group_handles_allow_redecoration() {
        let m = z2();
        let and = op(vec![0, 0], vec![0, 0, 0, 1]);
        let handle = phi_embed(&[and.underlying()], 2, &m, 2).unwrap();
        let fragment = handle.fragment(2, 2).unwrap();
        for f in &fragment {
            for signum in all_signa(f.arity(), m.size()) {
                let redecorated =
                    f.underlying().with_signum(Signum(signum)).unwrap();
                assert!(fragment.contains(&redecorated), "missing {redecorated:?}");
            }
        }
    }

    #[test]
    fn orbit_identity_maps_fix_the_handle() {
        let m = z2();
        let and = op(vec![0, 0], vec![0, 0, 0, 1]);
        let handle = PrecloneHandle::new(vec![and], &m);
        let orbit =
            symmetry_orbit(&handle, &[vec![0, 1]], &[vec![0, 1]], 2, 2).unwrap();
        assert_eq!(orbit.len(), 1);
        assert_eq!(
            orbit[0].fragment(2, 2).unwrap(),
            handle.fragment(2, 2).unwrap()
        );
    }

    #[test]
    fn orbit_swap_sends_and_to_or() {
        let m = z2();
        let and = op(vec![0, 0], vec![0, 0, 0, 1]);
        let or = op(vec![0, 0], vec![0, 1, 1, 1]);
        let handle = PrecloneHandle::new(vec![and], &m);
        let orbit = symmetry_orbit(
            &handle,
            &[vec![0, 1], vec![1, 0]],
            &[vec![0, 1]],
            2,
            2,
        )
        .unwrap();
        // and / or are exchanged by the 0-1 swap: two distinct images
        assert_eq!(orbit.len(), 2);
        let or_handle = PrecloneHandle::new(vec![or], &m);
        let target = or_handle.fragment(2, 2).unwrap();
        assert!(orbit.iter().any(|h| h.fragment(2, 2).unwrap() == target));
    }

    #[test]
    fn orbit_size_divides_group_order() {
        let m = z2();
        let neg = op(vec![1], vec![1, 0]);
        let handle = PrecloneHandle::new(vec![neg], &m);
        let pis = vec![vec![0, 1], vec![1, 0]];
        let hs = vec![vec![0, 1]];
        let orbit = symmetry_orbit(&handle, &pis, &hs, 2, 2).unwrap();
        assert_eq!((pis.len() * hs.len()) % orbit.len(), 0);
    }
}
