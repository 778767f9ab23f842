//! Generation engines on both sides of the Galois connection.
//!
//! `preclone_generate` closes an operation set under the six preclone
//! primitives by breadth-first worklist; `relclone_generate` does the
//! same for relation sets under the relational-clone operations. Both
//! engines work inside an arity window `cap + slack` and report a
//! per-arity saturation flag; their outputs are sound
//! under-approximations of the generated objects, and the closure-based
//! membership test remains the authoritative decision procedure.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, VecDeque};

use crate::error::{Error, Result};
use crate::galois::{self, ClosureReport};
use crate::monoid::Monoid;
use crate::ops::SignedOp;
use crate::rel::{
    all_partitions, delta_s, diagonal_of_partition, is_s_diagonal, Relation, SRelation,
};

/// Default bound on how many distinct objects a generator may hold
/// (members at every arity up to cap + slack).
pub const DEFAULT_BUDGET: usize = 200_000;

pub const DEFAULT_OP_SLACK: usize = 2;

/// Default relation slack: one extra arity per capped arity, so a
/// product followed by row projections fits.
pub fn default_rel_slack(arity_cap: usize) -> usize {
    arity_cap
}

/// A generated operation fragment.
#[derive(Debug, Clone)]
pub struct PrecloneFragment {
    pub k: usize,
    pub arity_cap: usize,
    pub slack: usize,
    /// Members of arity at most `arity_cap`.
    pub members: BTreeSet<SignedOp>,
    /// `saturated[a-1]` says arity `a` is provably complete: either a
    /// global fixed point was reached inside the window, or the
    /// fragment holds every operation up to that arity.
    pub saturated: Vec<bool>,
}

impl PrecloneFragment {
    pub fn contains(&self, f: &SignedOp) -> bool {
        self.members.contains(f)
    }

    pub fn members_of_arity(&self, arity: usize) -> impl Iterator<Item = &SignedOp> {
        self.members.iter().filter(move |f| f.arity() == arity)
    }
}

/// A generated relation fragment.
#[derive(Debug, Clone)]
pub struct RelCloneFragment {
    pub k: usize,
    pub arity_cap: usize,
    pub slack: usize,
    pub members: BTreeSet<SRelation>,
    pub saturated: Vec<bool>,
}

impl RelCloneFragment {
    pub fn contains(&self, rho: &SRelation) -> bool {
        self.members.contains(rho)
    }

    pub fn members_of_arity(&self, arity: usize) -> impl Iterator<Item = &SRelation> {
        self.members.iter().filter(move |r| r.arity() == arity)
    }
}

/// Number of signed operations of exactly this arity, if it fits in a
/// usize.
fn total_ops(k: usize, monoid_size: usize, arity: usize) -> Option<usize> {
    let space = crate::codec::tuple_space(k, arity)?;
    let mut tables: usize = 1;
    for _ in 0..space {
        tables = tables.checked_mul(k)?;
    }
    let mut signa: usize = 1;
    for _ in 0..arity {
        signa = signa.checked_mul(monoid_size)?;
    }
    tables.checked_mul(signa)
}

/// Closes `gens` plus the identity under zeta, tau, nabla, delta and
/// composition, keeping intermediates of arity up to `cap + slack` and
/// reporting members up to `cap`.
pub fn preclone_generate(
    gens: &[SignedOp],
    k: usize,
    monoid: &Monoid,
    arity_cap: usize,
    slack: usize,
    budget: usize,
) -> Result<PrecloneFragment> {
    let limit = arity_cap + slack;
    let mut all: BTreeSet<SignedOp> = BTreeSet::new();
    let mut list: Vec<SignedOp> = Vec::new();
    // process small arities first so the capped window fills early
    let mut queue: BinaryHeap<Reverse<(usize, usize)>> = BinaryHeap::new();
    let mut counts = vec![0usize; limit];
    let totals: Vec<Option<usize>> =
        (1..=limit).map(|a| total_ops(k, monoid.size(), a)).collect();

    let push = |f: SignedOp,
                all: &mut BTreeSet<SignedOp>,
                list: &mut Vec<SignedOp>,
                queue: &mut BinaryHeap<Reverse<(usize, usize)>>,
                counts: &mut Vec<usize>| {
        if f.arity() <= limit && all.insert(f.clone()) {
            counts[f.arity() - 1] += 1;
            queue.push(Reverse((f.arity(), list.len())));
            list.push(f);
        }
    };

    push(
        SignedOp::identity(k, monoid.unit()),
        &mut all,
        &mut list,
        &mut queue,
        &mut counts,
    );
    for f in gens {
        if f.k() != k {
            return Err(Error::DomainMismatch(k, f.k()));
        }
        if f.arity() > limit {
            return Err(Error::ArityCapExceeded { required: f.arity(), cap: limit });
        }
        push(f.clone(), &mut all, &mut list, &mut queue, &mut counts);
    }

    // nothing can be added at or below an arity that is already full
    let capped_complete = |counts: &[usize]| {
        (0..arity_cap).all(|i| matches!(totals[i], Some(t) if counts[i] == t))
    };

    let mut fixpoint = true;
    'outer: while let Some(Reverse((_, i))) = queue.pop() {
        if capped_complete(&counts) {
            fixpoint = false; // the window was not exhausted
            break;
        }
        let f = list[i].clone();
        let mut derived: Vec<SignedOp> = vec![f.zeta(), f.tau(), f.delta()];
        if f.arity() + 1 <= limit {
            for s in monoid.elems() {
                derived.push(f.nabla(s)?);
            }
        }
        // pair with everything present when f is processed; later
        // arrivals will pair with f in their own turn
        for j in 0..list.len() {
            let g = &list[j];
            if f.arity() + g.arity() - 1 <= limit {
                derived.push(f.compose(g, monoid)?);
                if i != j {
                    derived.push(g.compose(&f, monoid)?);
                }
            }
        }
        for d in derived {
            push(d, &mut all, &mut list, &mut queue, &mut counts);
            if all.len() > budget {
                fixpoint = false;
                break 'outer;
            }
        }
    }

    let saturated = (1..=arity_cap)
        .map(|a| {
            fixpoint || (0..a).all(|i| matches!(totals[i], Some(t) if counts[i] == t))
        })
        .collect();
    let members = all.into_iter().filter(|f| f.arity() <= arity_cap).collect();
    Ok(PrecloneFragment { k, arity_cap, slack, members, saturated })
}

/// Closes `q` plus the binary diagonal family under the row
/// operations, meets (including the arity-mismatch convention),
/// products, index translations and self-intersections, inside the
/// arity window `cap + slack`.
pub fn relclone_generate(
    q: &[SRelation],
    k: usize,
    monoid: &Monoid,
    arity_cap: usize,
    slack: usize,
    budget: usize,
) -> Result<RelCloneFragment> {
    let limit = arity_cap + slack;
    crate::codec::tuple_space(k, limit)
        .ok_or_else(|| Error::CapExceeded(format!("tuple space {k}^{limit}")))?;
    let mut all: BTreeSet<SRelation> = BTreeSet::new();
    let mut list: Vec<SRelation> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();

    let push = |rho: SRelation,
                    all: &mut BTreeSet<SRelation>,
                    list: &mut Vec<SRelation>,
                    queue: &mut VecDeque<usize>| {
        if rho.arity() <= limit && all.insert(rho.clone()) {
            queue.push_back(list.len());
            list.push(rho);
        }
    };

    push(delta_s(k, monoid.size()), &mut all, &mut list, &mut queue);
    for rho in q {
        if rho.k() != k {
            return Err(Error::DomainMismatch(k, rho.k()));
        }
        if rho.arity() > limit {
            return Err(Error::ArityCapExceeded { required: rho.arity(), cap: limit });
        }
        push(rho.clone(), &mut all, &mut list, &mut queue);
    }

    let mut fixpoint = true;
    'outer: while let Some(i) = queue.pop_front() {
        let rho = list[i].clone();
        let mut derived: Vec<SRelation> = vec![rho.zeta(), rho.tau(), rho.pr()];
        for v in monoid.elems() {
            derived.push(rho.mu(v, monoid));
            derived.push(rho.self_intersect(v, monoid)?);
        }
        for j in 0..list.len() {
            let other = &list[j];
            // meet covers the mismatched-arity convention too
            derived.push(rho.meet(other)?);
            if rho.arity() != other.arity() {
                derived.push(other.meet(&rho)?);
            }
            if rho.arity() + other.arity() <= limit {
                derived.push(rho.product(other)?);
                if i != j {
                    derived.push(other.product(&rho)?);
                }
            }
        }
        for d in derived {
            push(d, &mut all, &mut list, &mut queue);
            if all.len() > budget {
                fixpoint = false;
                break 'outer;
            }
        }
    }

    let saturated = vec![fixpoint; arity_cap];
    let members = all.into_iter().filter(|r| r.arity() <= arity_cap).collect();
    Ok(RelCloneFragment { k, arity_cap, slack, members, saturated })
}

/// All signed diagonal families of arity `m`: per monoid element a
/// partition of the rows or the empty marker, subject to the
/// left-ideal monotonicity condition. Enumeration order is the
/// mixed-radix count over per-element choices.
pub fn s_diagonals_all(m: usize, k: usize, monoid: &Monoid) -> Result<Vec<SRelation>> {
    crate::codec::tuple_space(k, m)
        .ok_or_else(|| Error::CapExceeded(format!("tuple space {k}^{m}")))?;
    // choice 0 is the empty part; choice i >= 1 is the i-th partition
    let partitions = all_partitions(m);
    let mut parts_catalog: Vec<Relation> = vec![Relation::empty(k, m)?];
    for block in &partitions {
        parts_catalog.push(diagonal_of_partition(k, block)?);
    }
    let radix = parts_catalog.len();
    let mut total: usize = 1;
    for _ in 0..monoid.size() {
        total = total
            .checked_mul(radix)
            .ok_or_else(|| Error::CapExceeded("diagonal family enumeration".into()))?;
    }
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut parts = Vec::with_capacity(monoid.size());
        for _ in 0..monoid.size() {
            parts.push(parts_catalog[c % radix].clone());
            c /= radix;
        }
        let rho = SRelation::new(parts)?;
        if is_s_diagonal(&rho, monoid) {
            out.push(rho);
        }
    }
    Ok(out)
}

/// The smallest member of the generated relation fragment containing
/// `rho`, at `rho`'s arity. Errors if the fragment did not saturate at
/// that arity, since the intersection would then be unsound.
pub fn gamma_q(
    q: &[SRelation],
    rho: &SRelation,
    k: usize,
    monoid: &Monoid,
    arity_cap: usize,
    slack: usize,
) -> Result<SRelation> {
    if rho.arity() > arity_cap {
        return Err(Error::ArityCapExceeded { required: rho.arity(), cap: arity_cap });
    }
    let fragment = relclone_generate(q, k, monoid, arity_cap, slack, DEFAULT_BUDGET)?;
    if !fragment.saturated[rho.arity() - 1] {
        return Err(Error::Unsaturated(rho.arity()));
    }
    let mut acc = SRelation::full(k, rho.arity(), monoid.size())?;
    for member in fragment.members_of_arity(rho.arity()) {
        if rho.is_subset(member) {
            acc = acc.meet(member)?;
        }
    }
    Ok(acc)
}

/// Result of checking term-generation against closure-based
/// membership on every operation up to the cap.
#[derive(Debug, Clone)]
pub struct TheoremIReport {
    pub checked: usize,
    pub saturated: Vec<bool>,
    /// Operations in the term fragment rejected by the closure test.
    pub unsound: Vec<SignedOp>,
    /// Closure members missed by the term fragment at saturated
    /// arities.
    pub incomplete: Vec<SignedOp>,
}

impl TheoremIReport {
    pub fn ok(&self) -> bool {
        self.unsound.is_empty() && self.incomplete.is_empty()
    }
}

pub fn verify_theorem_i(
    gens: &[SignedOp],
    k: usize,
    monoid: &Monoid,
    op_cap: usize,
    slack: usize,
    budget: usize,
) -> Result<TheoremIReport> {
    let fragment = preclone_generate(gens, k, monoid, op_cap, slack, budget)?;
    let oracle = galois::MembershipOracle::new(gens.to_vec(), monoid);
    let mut checked = 0usize;
    let mut unsound = Vec::new();
    let mut incomplete = Vec::new();
    for arity in 1..=op_cap {
        for g in galois::enumerate_ops(k, monoid, arity)? {
            checked += 1;
            let by_terms = fragment.contains(&g);
            let by_closure = oracle.member(&g)?;
            if by_terms && !by_closure {
                unsound.push(g.clone());
            }
            if fragment.saturated[arity - 1] && by_closure && !by_terms {
                incomplete.push(g.clone());
            }
        }
    }
    Ok(TheoremIReport { checked, saturated: fragment.saturated, unsound, incomplete })
}

/// Result of comparing a generated relation fragment against the
/// invariants of its bounded polymorphism set.
#[derive(Debug, Clone)]
pub struct TheoremIIReport {
    pub generated: Vec<SRelation>,
    pub invariant: Vec<SRelation>,
    /// Generated relations not invariant: must be empty always.
    pub missing: Vec<SRelation>,
    /// Invariant relations not generated: expected to shrink to empty
    /// as the operation cap grows.
    pub extra: Vec<SRelation>,
}

impl TheoremIIReport {
    pub fn contained(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn exact(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

pub fn verify_theorem_ii(
    q: &[SRelation],
    k: usize,
    monoid: &Monoid,
    rel_cap: usize,
    rel_slack: usize,
    op_cap: usize,
) -> Result<TheoremIIReport> {
    let fragment = relclone_generate(q, k, monoid, rel_cap, rel_slack, DEFAULT_BUDGET)?;
    let polys = galois::spol(q, op_cap, k, monoid)?;
    let invariant = galois::sinv(&polys, rel_cap, k, monoid)?;
    let inv_set: BTreeSet<&SRelation> = invariant.iter().collect();
    let generated: Vec<SRelation> = fragment.members.iter().cloned().collect();
    let missing: Vec<SRelation> = generated
        .iter()
        .filter(|r| !inv_set.contains(r))
        .cloned()
        .collect();
    let gen_set = &fragment.members;
    let extra: Vec<SRelation> = invariant
        .iter()
        .filter(|r| !gen_set.contains(*r))
        .cloned()
        .collect();
    Ok(TheoremIIReport { generated, invariant, missing, extra })
}

/// Convenience wrapper: closure report form of `preclone_generate`
/// used by callers that only care about the member set and whether the
/// window saturated everywhere.
pub fn preclone_closure_report(
    gens: &[SignedOp],
    k: usize,
    monoid: &Monoid,
    arity_cap: usize,
    slack: usize,
) -> Result<ClosureReport<PrecloneFragment>> {
    let fragment = preclone_generate(gens, k, monoid, arity_cap, slack, DEFAULT_BUDGET)?;
    let saturated = fragment.saturated.iter().all(|&b| b);
    Ok(ClosureReport { result: fragment, iterations: 0, saturated })
}
