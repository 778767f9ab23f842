//! The preservation predicate, the bounded SPol/SInv operators, the
//! chi construction, and the fixed-point closure that decides
//! generated-preclone membership.
//!
//! SPol and SInv are infinite families; everything here enumerates
//! cap-bounded fragments only and says so in the API names and docs.

use std::cell::RefCell;
use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::codec::{decode, tuple_space, TupleSet};
use crate::error::{Error, Result};
use crate::monoid::Monoid;
use crate::ops::{SignedOp, Signum, UnsignedOp};
use crate::rel::{Relation, SRelation};

/// Outcome of a fixed-point run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport<T> {
    pub result: T,
    pub iterations: usize,
    pub saturated: bool,
}

/// A failed preservation check: for signum element `s`, applying the
/// operation to `columns` produced `image`, which is outside the
/// target part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub s: u8,
    pub columns: Vec<Vec<u8>>,
    pub image: Vec<u8>,
}

/// A classical relation pair (source, target) of equal arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationPair {
    pub source: Relation,
    pub target: Relation,
}

impl RelationPair {
    pub fn new(source: Relation, target: Relation) -> Result<Self> {
        if source.arity() != target.arity() || source.k() != target.k() {
            return Err(Error::Malformed("pair must share domain and arity".into()));
        }
        Ok(RelationPair { source, target })
    }
}

/// The generic-argument relation for a signum: arity `k^n`, one column
/// per signum entry, rows enumerating all n-tuples in codec order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiRelation {
    pub rel: SRelation,
    pub columns: Vec<Vec<u8>>,
}

/// True iff `f` preserves `rho`: for every `s`, applying `f` to
/// columns drawn from the parts at `s_j * s` stays inside the part at
/// `s`.
pub fn preserves(f: &SignedOp, rho: &SRelation, monoid: &Monoid) -> bool {
    preserves_witness(f, rho, monoid).is_none()
}

/// Like [`preserves`] but returns the first violation found, scanning
/// `s`, then column choices, in codec order.
pub fn preserves_witness(f: &SignedOp, rho: &SRelation, monoid: &Monoid) -> Option<Witness> {
    let n = f.arity();
    let m = rho.arity();
    let k = rho.k();
    debug_assert_eq!(f.k(), k);
    for s in monoid.elems() {
        let target = rho.part(s);
        let sources: Vec<Vec<usize>> = f
            .signum()
            .0
            .iter()
            .map(|&sj| rho.part(monoid.mul(sj, s)).members().iter_ones().collect())
            .collect();
        if sources.iter().any(|src| src.is_empty()) {
            continue;
        }
        let decoded: Vec<Vec<Vec<u8>>> = sources
            .iter()
            .map(|src| src.iter().map(|&i| decode(i, k, m)).collect())
            .collect();
        let mut idx = vec![0usize; n];
        let mut image = vec![0u8; m];
        let mut args = vec![0u8; n];
        loop {
            for row in 0..m {
                for j in 0..n {
                    args[j] = decoded[j][idx[j]][row];
                }
                image[row] = f.eval_index(crate::codec::encode(&args, k));
            }
            if !target.contains(&image) {
                let columns = (0..n).map(|j| decoded[j][idx[j]].clone()).collect();
                return Some(Witness { s, columns, image });
            }
            // odometer over column choices
            let mut j = n;
            let mut done = true;
            while j > 0 {
                j -= 1;
                idx[j] += 1;
                if idx[j] < decoded[j].len() {
                    done = false;
                    break;
                }
                idx[j] = 0;
            }
            if done {
                break;
            }
        }
    }
    None
}

/// Classical preservation: `f(sigma,..,sigma) subseteq sigma`.
pub fn preserves_classical(f: &UnsignedOp, sigma: &Relation) -> bool {
    preserves_pair(
        f,
        &RelationPair { source: sigma.clone(), target: sigma.clone() },
    )
}

/// Pair preservation: `f(source,..,source) subseteq target`.
pub fn preserves_pair(f: &UnsignedOp, pair: &RelationPair) -> bool {
    let k = pair.source.k();
    let m = pair.source.arity();
    let n = f.arity;
    let columns: Vec<Vec<u8>> = pair.source.tuples().collect();
    if columns.is_empty() {
        return true;
    }
    let mut idx = vec![0usize; n];
    let mut image = vec![0u8; m];
    let mut args = vec![0u8; n];
    loop {
        for row in 0..m {
            for j in 0..n {
                args[j] = columns[idx[j]][row];
            }
            image[row] = f.eval_index(crate::codec::encode(&args, k));
        }
        if !pair.target.contains(&image) {
            return false;
        }
        let mut j = n;
        let mut done = true;
        while j > 0 {
            j -= 1;
            idx[j] += 1;
            if idx[j] < columns.len() {
                done = false;
                break;
            }
            idx[j] = 0;
        }
        if done {
            return true;
        }
    }
}

/// Builds the chi relation for a signum over `A = {0..k-1}`.
pub fn chi(k: usize, lambda: &Signum, monoid: &Monoid) -> Result<ChiRelation> {
    let n = lambda.len();
    let m = tuple_space(k, n).ok_or(Error::ArityCapExceeded {
        required: n,
        cap: crate::codec::MAX_TUPLE_SPACE,
    })?;
    // the relation lives over A^m; ensure its bitsets fit too
    tuple_space(k, m).ok_or(Error::ArityCapExceeded {
        required: m,
        cap: crate::codec::MAX_TUPLE_SPACE,
    })?;
    let mut columns = vec![vec![0u8; m]; n];
    for row in 0..m {
        let t = decode(row, k, n);
        for i in 0..n {
            columns[i][row] = t[i];
        }
    }
    let mut rel = SRelation::empty(k, m, monoid.size())?;
    for (i, col) in columns.iter().enumerate() {
        rel.part_mut(lambda.0[i]).insert(col);
    }
    Ok(ChiRelation { rel, columns })
}

/// Least invariant extension of `rho` under the generators, by the
/// round-based increasing iteration. Within a round, new columns come
/// only from the previous round's state; rounds merge at a barrier.
pub fn gamma_closure(
    gens: &[SignedOp],
    rho: &SRelation,
    monoid: &Monoid,
) -> ClosureReport<SRelation> {
    let k = rho.k();
    let m = rho.arity();
    let mut cur = rho.clone();
    // split each part into settled and frontier tuples
    let mut frontier: Vec<Vec<Vec<u8>>> = cur
        .parts()
        .iter()
        .map(|p| p.tuples().collect())
        .collect();
    let mut settled: Vec<Vec<Vec<u8>>> = vec![Vec::new(); cur.monoid_size()];
    let mut iterations = 0usize;
    loop {
        iterations += 1;
        let space = cur.part(0).members().nbits();
        let mut added: Vec<TupleSet> = vec![TupleSet::empty(space); cur.monoid_size()];
        let mut any = false;
        for f in gens {
            let n = f.arity();
            for s in monoid.elems() {
                let srcs: Vec<usize> = f
                    .signum()
                    .0
                    .iter()
                    .map(|&sj| monoid.mul(sj, s) as usize)
                    .collect();
                if srcs.iter().any(|&p| settled[p].is_empty() && frontier[p].is_empty()) {
                    continue;
                }
                let mut idx = vec![0usize; n];
                let mut image = vec![0u8; m];
                let mut args = vec![0u8; n];
                loop {
                    // require at least one frontier column
                    let fresh = (0..n).any(|j| idx[j] >= settled[srcs[j]].len());
                    if fresh {
                        for row in 0..m {
                            for j in 0..n {
                                let p = srcs[j];
                                let col = if idx[j] < settled[p].len() {
                                    &settled[p][idx[j]]
                                } else {
                                    &frontier[p][idx[j] - settled[p].len()]
                                };
                                args[j] = col[row];
                            }
                            image[row] = f.eval_index(crate::codec::encode(&args, k));
                        }
                        let code = crate::codec::encode(&image, k);
                        if !cur.part(s).contains_index(code) && added[s as usize].insert(code) {
                            any = true;
                        }
                    }
                    let mut j = n;
                    let mut done = true;
                    while j > 0 {
                        j -= 1;
                        idx[j] += 1;
                        if idx[j] < settled[srcs[j]].len() + frontier[srcs[j]].len() {
                            done = false;
                            break;
                        }
                        idx[j] = 0;
                    }
                    if done {
                        break;
                    }
                }
            }
        }
        if !any {
            break;
        }
        for s in 0..cur.monoid_size() {
            settled[s].append(&mut frontier[s]);
            frontier[s] = added[s].iter_ones().map(|i| decode(i, k, m)).collect();
            for i in added[s].iter_ones() {
                cur.part_mut(s as u8).insert_index(i);
            }
        }
    }
    ClosureReport { result: cur, iterations, saturated: true }
}

/// Eager variant of [`gamma_closure`]: newly found tuples are used
/// immediately within the same pass. Reaches the same fixed point.
pub fn gamma_closure_eager(
    gens: &[SignedOp],
    rho: &SRelation,
    monoid: &Monoid,
) -> ClosureReport<SRelation> {
    let k = rho.k();
    let m = rho.arity();
    let mut cur = rho.clone();
    let mut iterations = 0usize;
    loop {
        iterations += 1;
        let mut any = false;
        for f in gens {
            let n = f.arity();
            for s in monoid.elems() {
                let srcs: Vec<u8> =
                    f.signum().0.iter().map(|&sj| monoid.mul(sj, s)).collect();
                // re-snapshot sources on every (f, s) visit: eager reuse
                let cols: Vec<Vec<Vec<u8>>> = srcs
                    .iter()
                    .map(|&p| cur.part(p).tuples().collect())
                    .collect();
                if cols.iter().any(|c| c.is_empty()) {
                    continue;
                }
                let mut idx = vec![0usize; n];
                let mut image = vec![0u8; m];
                let mut args = vec![0u8; n];
                loop {
                    for row in 0..m {
                        for j in 0..n {
                            args[j] = cols[j][idx[j]][row];
                        }
                        image[row] = f.eval_index(crate::codec::encode(&args, k));
                    }
                    if cur.part_mut(s).insert(&image) {
                        any = true;
                    }
                    let mut j = n;
                    let mut done = true;
                    while j > 0 {
                        j -= 1;
                        idx[j] += 1;
                        if idx[j] < cols[j].len() {
                            done = false;
                            break;
                        }
                        idx[j] = 0;
                    }
                    if done {
                        break;
                    }
                }
            }
        }
        if !any {
            break;
        }
    }
    ClosureReport { result: cur, iterations, saturated: true }
}

/// Decides membership of `g` in the preclone generated by `gens`.
///
/// Computes the closure of the chi relation for `g`'s signum and
/// checks the single defining column: the image of the chi columns
/// under `g` must land in the unit part. On failure the certificate
/// names the unit part, the chi columns, and the offending image.
pub fn membership_certificate(
    g: &SignedOp,
    gens: &[SignedOp],
    monoid: &Monoid,
) -> Result<Option<Witness>> {
    let chi_rel = chi(g.k(), g.signum(), monoid)?;
    let closed = gamma_closure(gens, &chi_rel.rel, monoid).result;
    Ok(check_columns(g, &chi_rel.columns, &closed, monoid))
}

/// Membership check against a precomputed closed chi relation.
fn check_columns(
    g: &SignedOp,
    columns: &[Vec<u8>],
    closed: &SRelation,
    monoid: &Monoid,
) -> Option<Witness> {
    let refs: Vec<&[u8]> = columns.iter().map(|c| c.as_slice()).collect();
    let image = crate::rel::apply_op(g, &refs).expect("chi columns match arity");
    if closed.part(monoid.unit()).contains(&image) {
        None
    } else {
        Some(Witness { s: monoid.unit(), columns: columns.to_vec(), image })
    }
}

pub fn membership(g: &SignedOp, gens: &[SignedOp], monoid: &Monoid) -> Result<bool> {
    Ok(membership_certificate(g, gens, monoid)?.is_none())
}

/// Membership oracle with a per-signum cache of closed chi relations.
pub struct MembershipOracle {
    monoid: Monoid,
    gens: Vec<SignedOp>,
    cache: RefCell<BTreeMap<Vec<u8>, SRelation>>,
}

impl MembershipOracle {
    pub fn new(gens: Vec<SignedOp>, monoid: &Monoid) -> Self {
        MembershipOracle { monoid: monoid.clone(), gens, cache: RefCell::new(BTreeMap::new()) }
    }

    pub fn gens(&self) -> &[SignedOp] {
        &self.gens
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn member(&self, g: &SignedOp) -> Result<bool> {
        Ok(self.certificate(g)?.is_none())
    }

    pub fn certificate(&self, g: &SignedOp) -> Result<Option<Witness>> {
        let key = {
            let mut key = g.signum().0.clone();
            key.push(g.k() as u8);
            key
        };
        if !self.cache.borrow().contains_key(&key) {
            let chi_rel = chi(g.k(), g.signum(), &self.monoid)?;
            let closed = gamma_closure(&self.gens, &chi_rel.rel, &self.monoid).result;
            self.cache.borrow_mut().insert(key.clone(), closed);
        }
        let cache = self.cache.borrow();
        let closed = cache.get(&key).unwrap();
        let chi_rel = chi(g.k(), g.signum(), &self.monoid)?;
        Ok(check_columns(g, &chi_rel.columns, closed, &self.monoid))
    }
}

/// All signed operations of exactly this arity, ordered by signum
/// (codec order on `S^n`), then table index.
pub fn enumerate_ops(k: usize, monoid: &Monoid, arity: usize) -> Result<Vec<SignedOp>> {
    let space = tuple_space(k, arity)
        .ok_or_else(|| Error::CapExceeded(format!("table space {k}^{arity}")))?;
    let tables = tuple_space(k, space)
        .ok_or_else(|| Error::CapExceeded(format!("table count {k}^{space}")))?;
    let signa = tuple_space(monoid.size(), arity)
        .ok_or_else(|| Error::CapExceeded(format!("signum count for arity {arity}")))?;
    let mut out = Vec::with_capacity(signa * tables);
    for sidx in 0..signa {
        let signum = Signum(decode(sidx, monoid.size(), arity));
        for t in 0..tables {
            out.push(SignedOp::new(k, signum.clone(), decode(t, k, space))?);
        }
    }
    Ok(out)
}

/// All signed relations of exactly this arity, in a fixed enumeration
/// order (part bitmasks, first monoid element most significant).
pub fn enumerate_srelations(k: usize, monoid: &Monoid, arity: usize) -> Result<Vec<SRelation>> {
    let space = tuple_space(k, arity)
        .ok_or_else(|| Error::CapExceeded(format!("tuple space {k}^{arity}")))?;
    let total_bits = space * monoid.size();
    if total_bits > 24 {
        return Err(Error::CapExceeded(format!(
            "enumeration of 2^{total_bits} relation families"
        )));
    }
    let mut out = Vec::with_capacity(1usize << total_bits);
    for u in 0..(1usize << total_bits) {
        let mut rel = SRelation::empty(k, arity, monoid.size())?;
        for s in 0..monoid.size() {
            let shift = (monoid.size() - 1 - s) * space;
            for j in 0..space {
                if u >> (shift + space - 1 - j) & 1 != 0 {
                    rel.part_mut(s as u8).insert_index(j);
                }
            }
        }
        out.push(rel);
    }
    Ok(out)
}

/// The bounded SPol fragment: every signed operation of arity at most
/// `op_cap` preserving all of `q`. Deterministic order: arity, signum,
/// table index.
pub fn spol(q: &[SRelation], op_cap: usize, k: usize, monoid: &Monoid) -> Result<Vec<SignedOp>> {
    let mut out = Vec::new();
    for arity in 1..=op_cap {
        let candidates = enumerate_ops(k, monoid, arity)?;
        let mut kept: Vec<SignedOp> = candidates
            .into_par_iter()
            .filter(|f| q.iter().all(|rho| preserves(f, rho, monoid)))
            .collect();
        out.append(&mut kept);
    }
    Ok(out)
}

/// The bounded SInv fragment: every signed relation of arity at most
/// `rel_cap` preserved by all of `f_set`.
pub fn sinv(
    f_set: &[SignedOp],
    rel_cap: usize,
    k: usize,
    monoid: &Monoid,
) -> Result<Vec<SRelation>> {
    let mut out = Vec::new();
    for arity in 1..=rel_cap {
        let candidates = enumerate_srelations(k, monoid, arity)?;
        let mut kept: Vec<SRelation> = candidates
            .into_par_iter()
            .filter(|rho| f_set.iter().all(|f| preserves(f, rho, monoid)))
            .collect();
        out.append(&mut kept);
    }
    Ok(out)
}

/// Classical-clone membership of an unsigned operation in the clone
/// generated by the underlying tables of `gens`, via the trivial
/// monoid specialization.
pub fn underlying_clone_membership(f0: &UnsignedOp, gens: &[SignedOp]) -> Result<bool> {
    let trivial = Monoid::builtin("trivial").expect("builtin");
    let g = f0.with_signum(Signum::constant(0, f0.arity))?;
    let stripped: Vec<SignedOp> = gens
        .iter()
        .map(|f| f.underlying().with_signum(Signum::constant(0, f.arity())))
        .collect::<Result<Vec<_>>>()?;
    membership(&g, &stripped, &trivial)
}

/// The underlying tables of the members whose signum is constantly `s`.
pub fn s_part(f_set: &[SignedOp], s: u8) -> Vec<UnsignedOp> {
    f_set
        .iter()
        .filter(|f| f.signum().0.iter().all(|&x| x == s))
        .map(|f| f.underlying())
        .collect()
}

/// Checks that the unit part of a fragment behaves like a clone within
/// the fragment: contains the projections at every arity present and
/// is closed under first-position composition whenever the composite
/// arity stays in range.
pub fn e_part_is_clone(f_set: &[SignedOp], k: usize, monoid: &Monoid) -> bool {
    let part = s_part(f_set, monoid.unit());
    if part.is_empty() {
        return true;
    }
    let max_arity = part.iter().map(|f| f.arity).max().unwrap();
    let members: std::collections::BTreeSet<&UnsignedOp> = part.iter().collect();
    for n in 1..=max_arity {
        for i in 0..n {
            let p = UnsignedOp::projection(k, n, i).expect("within cap");
            if !members.contains(&p) {
                return false;
            }
        }
    }
    let unit = monoid.unit();
    for f in &part {
        for g in &part {
            if f.arity + g.arity - 1 > max_arity {
                continue;
            }
            let fs = f.with_signum(Signum::constant(unit, f.arity)).unwrap();
            let gs = g.with_signum(Signum::constant(unit, g.arity)).unwrap();
            let comp = fs.compose(&gs, monoid).unwrap().underlying();
            if !members.contains(&comp) {
                return false;
            }
        }
    }
    true
}
