//! Brute-force subgroup enumeration for Z_m x Z_n.
//!
//! This module knows nothing about counting formulas. It builds every
//! subgroup explicitly, by closing subsets of the group under addition, so
//! it can serve as an independent ground truth for the formula routes. A
//! second, structurally different enumeration counts matrices in Hermite
//! normal form so the oracle itself has a cross-check.

use std::collections::BTreeSet;

use crate::error::{CensusError, Result};

/// Default ceiling on the group order m * n accepted by the oracle.
pub const DEFAULT_ORACLE_CAP: u64 = 2000;

/// A validated rank-two group shape for enumeration.
#[derive(Clone, Copy, Debug)]
pub struct GroupSpec {
    m: u64,
    n: u64,
}

impl GroupSpec {
    pub fn new(m: u64, n: u64, cap: u64) -> Result<GroupSpec> {
        if m == 0 || n == 0 {
            return Err(CensusError::InvalidInput(
                "group orders must be positive".into(),
            ));
        }
        let order = m
            .checked_mul(n)
            .ok_or(CensusError::Overflow {
                context: "oracle group order",
                a: m,
                b: n,
            })?;
        if order > cap {
            return Err(CensusError::ResourceCap(format!(
                "oracle enumeration needs m*n <= {cap}, got {order}; raise --cap if this is intended"
            )));
        }
        Ok(GroupSpec { m, n })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn order(&self) -> usize {
        (self.m * self.n) as usize
    }

    fn index(&self, x: u64, y: u64) -> usize {
        (x * self.n + y) as usize
    }
}

/// A subgroup as a bitset over the elements of Z_m x Z_n, element (x, y)
/// at bit x * n + y.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct ElementSet {
    bits: Vec<u64>,
    size: usize,
}

impl ElementSet {
    fn empty(order: usize) -> ElementSet {
        ElementSet {
            bits: vec![0u64; order.div_ceil(64)],
            size: 0,
        }
    }

    fn contains(&self, idx: usize) -> bool {
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }

    fn insert(&mut self, idx: usize) -> bool {
        let word = &mut self.bits[idx / 64];
        let mask = 1u64 << (idx % 64);
        if *word & mask == 0 {
            *word |= mask;
            self.size += 1;
            true
        } else {
            false
        }
    }

    fn iter_indices<'a>(&'a self) -> impl Iterator<Item = usize> + 'a {
        self.bits.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter_map(move |b| {
                if bits >> b & 1 == 1 {
                    Some(w * 64 + b)
                } else {
                    None
                }
            })
        })
    }
}

/// Closure of a set of generators under the group operation.
fn close_under_addition(spec: GroupSpec, generators: &[(u64, u64)]) -> ElementSet {
    let mut set = ElementSet::empty(spec.order());
    set.insert(spec.index(0, 0));
    let mut frontier: Vec<(u64, u64)> = vec![(0, 0)];
    while let Some((x, y)) = frontier.pop() {
        for &(gx, gy) in generators {
            let nx = (x + gx) % spec.m;
            let ny = (y + gy) % spec.n;
            if set.insert(spec.index(nx, ny)) {
                frontier.push((nx, ny));
            }
        }
    }
    set
}

fn is_closed(spec: GroupSpec, set: &ElementSet) -> bool {
    let elems: Vec<(u64, u64)> = set
        .iter_indices()
        .map(|i| (i as u64 / spec.n, i as u64 % spec.n))
        .collect();
    for &(ax, ay) in &elems {
        for &(bx, by) in &elems {
            if !set.contains(spec.index((ax + bx) % spec.m, (ay + by) % spec.n)) {
                return false;
            }
        }
    }
    true
}

/// Every subgroup of Z_m x Z_n, built from cyclic closures of single
/// elements and then saturated under joins with the cyclic subgroups until
/// no new subgroup appears. The saturation does not assume how many
/// generators can be needed; it simply runs to a fixpoint. Internal sanity
/// checks (closure, Lagrange, presence of the trivial and full subgroups)
/// report failure as an internal error rather than returning a wrong
/// census.
pub fn enumerate_subgroups(spec: GroupSpec) -> Result<Vec<SubgroupInfo>> {
    let order = spec.order() as u64;
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    // a subgroup is carried with a small generating set so joins stay cheap
    let mut cyclic: Vec<(ElementSet, Vec<(u64, u64)>)> = Vec::new();
    for x in 0..spec.m {
        for y in 0..spec.n {
            let set = close_under_addition(spec, &[(x, y)]);
            if seen.insert(set.bits.clone()) {
                cyclic.push((set, vec![(x, y)]));
            }
        }
    }
    let cyclic_count = cyclic.len();
    let mut all = cyclic.clone();
    let mut frontier = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (set, gens) in &frontier {
            for (base, base_gens) in &cyclic {
                if base.size == 1 || base.bits == set.bits {
                    continue;
                }
                let mut joined_gens = gens.clone();
                joined_gens.extend_from_slice(base_gens);
                let joined = close_under_addition(spec, &joined_gens);
                if seen.insert(joined.bits.clone()) {
                    next.push((joined.clone(), joined_gens.clone()));
                    all.push((joined, joined_gens));
                }
            }
        }
        frontier = next;
    }

    for (set, _) in &all {
        if !is_closed(spec, set) {
            return Err(CensusError::Internal(format!(
                "enumerated subset of size {} in Z_{} x Z_{} is not closed",
                set.size,
                spec.m,
                spec.n
            )));
        }
        if order % set.size as u64 != 0 {
            return Err(CensusError::Internal(format!(
                "subset size {} does not divide group order {order}",
                set.size
            )));
        }
    }
    if !all.iter().any(|(s, _)| s.size == 1)
        || !all.iter().any(|(s, _)| s.size == order as usize)
    {
        return Err(CensusError::Internal(
            "trivial or full subgroup missing from enumeration".into(),
        ));
    }

    let infos = all
        .iter()
        .enumerate()
        .map(|(i, (s, _))| SubgroupInfo {
            size: s.size as u64,
            cyclic: i < cyclic_count,
        })
        .collect();
    Ok(infos)
}

/// Size and cyclicity of one enumerated subgroup.
#[derive(Clone, Copy, Debug)]
pub struct SubgroupInfo {
    pub size: u64,
    pub cyclic: bool,
}

/// Total and cyclic subgroup counts from the enumeration.
pub fn census(spec: GroupSpec) -> Result<(u64, u64)> {
    let subs = enumerate_subgroups(spec)?;
    let total = subs.len() as u64;
    let cyclic = subs.iter().filter(|s| s.cyclic).count() as u64;
    Ok((total, cyclic))
}

/// Independent count of subgroups through Hermite normal form: subgroups
/// of Z_m x Z_n biject with triples (a, d, b) where a | m, d | n,
/// 0 <= b < a, and a | b * n / d. No element sets are built at all.
pub fn hnf_subgroup_count(m: u64, n: u64) -> Result<u64> {
    if m == 0 || n == 0 {
        return Err(CensusError::InvalidInput(
            "group orders must be positive".into(),
        ));
    }
    let mut count = 0u64;
    for a in 1..=m {
        if m % a != 0 {
            continue;
        }
        for d in 1..=n {
            if n % d != 0 {
                continue;
            }
            let step = n / d;
            for b in 0..a {
                if (b * step) % a == 0 {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}
