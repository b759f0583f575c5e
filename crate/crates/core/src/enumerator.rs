//! Enumeration of candidate semi-equivelar types for a surface of negative
//! Euler characteristic.
//!
//! A type with face lengths `q₁, …, q_r` on `p` vertices embeds on a surface
//! of characteristic `χ` only if
//!
//! ```text
//! 1 − r/2 + Σ 1/qᵢ = χ/p,   i.e.   Σ 1/qᵢ + |χ|/p = (r − 2)/2   (χ < 0).
//! ```
//!
//! All terms on the left are positive, so the face lengths can be found by a
//! bounded Egyptian-fraction recursion over nondecreasing denominators with
//! `p` solved for last.

use std::collections::BTreeSet;

use num_rational::Ratio;
use thiserror::Error;

use crate::setype::{normalize, SeType};

type Q = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error(
        "NonNegativeChi: chi={0} is not negative; for chi >= 0 the vertex count is unbounded or the \
         surface is a sphere/projective plane/torus/Klein bottle, which this enumerator does not cover"
    )]
    NonNegativeChi(i64),
}

/// A solution of the face-count identity with its side conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateType {
    /// `(qᵢ, kᵢ)` with `q₀ < q₁ < …` and `Σ kᵢ` the rank.
    pub multiset: Vec<(usize, usize)>,
    pub p: usize,
    /// Every distinct cyclic arrangement of the multiset, ascending.
    pub cyclic_expansions: Vec<SeType>,
}

impl CandidateType {
    pub fn rank(&self) -> usize {
        self.multiset.iter().map(|&(_, k)| k).sum()
    }

    /// Face lengths in ascending order, with repetition.
    pub fn faces(&self) -> Vec<usize> {
        self.multiset
            .iter()
            .flat_map(|&(q, k)| std::iter::repeat_n(q, k))
            .collect()
    }
}

fn group(faces: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &q in faces {
        match out.last_mut() {
            Some((last, k)) if *last == q => *k += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

/// Distinct cyclic sequences (up to rotation and reflection) with the given
/// multiset of entries, each in normalized form, ascending.
pub fn cyclic_arrangements(faces: &[usize]) -> Vec<Vec<usize>> {
    let mut sorted = faces.to_vec();
    sorted.sort_unstable();
    let mut out = BTreeSet::new();
    // distinct permutations with the first entry fixed to the minimum
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        if rest.is_empty() {
            out.insert(normalize(prefix));
            return;
        }
        let mut last = None;
        for i in 0..rest.len() {
            if last == Some(rest[i]) {
                continue;
            }
            last = Some(rest[i]);
            let q = rest.remove(i);
            prefix.push(q);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(i, q);
        }
    }
    if let Some((&first, rest)) = sorted.split_first() {
        rec(&mut vec![first], &mut rest.to_vec(), &mut out);
    }
    out.into_iter().collect()
}

/// Whether `t` satisfies the face-count identity for `chi` together with the
/// side conditions: `p` even, every face length even, dividing `p` and at
/// most `p`.
pub fn check_type(t: &SeType, chi: i64) -> bool {
    let p = t.p();
    p.is_multiple_of(2)
        && t.cycle()
            .iter()
            .all(|&q| q % 2 == 0 && p.is_multiple_of(q) && q <= p)
        && t.satisfies_identity(chi)
}

/// The largest rank with any solution: with every face length at least 4,
/// `(r − 2)/2 ≤ (r + |χ|)/4`.
pub fn max_rank(chi: i64) -> usize {
    4 + chi.unsigned_abs() as usize
}

/// All candidate types of the given rank, in ascending (faces, p) order.
pub fn enumerate_rank(
    chi: i64,
    rank: usize,
    allow_two_gons: bool,
) -> Result<Vec<CandidateType>, EnumError> {
    if chi >= 0 {
        return Err(EnumError::NonNegativeChi(chi));
    }
    let mut out = Vec::new();
    if rank < 2 {
        return Ok(out);
    }
    let floor = if allow_two_gons { 2 } else { 4 };
    let target = Q::new(rank as i64 - 2, 2);
    let mut faces = Vec::with_capacity(rank);
    descend(-chi, rank, floor, target, &mut faces, &mut out);
    out.sort_by_key(|a| (a.faces(), a.p));
    Ok(out)
}

fn descend(
    abs_chi: i64,
    rank: usize,
    min_q: usize,
    rem: Q,
    faces: &mut Vec<usize>,
    out: &mut Vec<CandidateType>,
) {
    let zero = Q::from_integer(0);
    if rem <= zero {
        return;
    }
    if faces.len() == rank {
        // |χ|/p = rem
        let p = Q::from_integer(abs_chi) / rem;
        if !p.is_integer() {
            return;
        }
        let p = p.to_integer() as usize;
        let max_q = *faces.last().unwrap();
        if p.is_multiple_of(2) && p >= max_q && faces.iter().all(|&q| p.is_multiple_of(q)) {
            out.push(CandidateType {
                multiset: group(faces),
                p,
                cyclic_expansions: cyclic_arrangements(faces)
                    .into_iter()
                    .map(|c| SeType::new(c, p).expect("valid faces"))
                    .collect(),
            });
        }
        return;
    }
    let slots = (rank - faces.len()) as i64 + abs_chi;
    // 1/q < rem (the p-term is still to come) and rem ≤ slots/q
    let upper = (Q::from_integer(slots) / rem).floor().to_integer() as usize;
    let lower_strict = (rem.recip()).floor().to_integer() as usize + 1;
    let mut q = min_q.max(lower_strict);
    if q % 2 == 1 {
        q += 1;
    }
    while q <= upper {
        faces.push(q);
        descend(abs_chi, rank, q, rem - Q::new(1, q as i64), faces, out);
        faces.pop();
        q += 2;
    }
}

/// Every candidate type for `chi`, ordered by rank, then face multiset, then
/// `p`.
///
/// Ranks run from 3 to [`max_rank`]. With `allow_two_gons` the face-length
/// floor drops to 2; the rank range is kept, since 2-gons alone make it
/// unbounded.
pub fn enumerate_types(chi: i64, allow_two_gons: bool) -> Result<Vec<CandidateType>, EnumError> {
    if chi >= 0 {
        return Err(EnumError::NonNegativeChi(chi));
    }
    let mut out = Vec::new();
    for rank in 3..=max_rank(chi) {
        out.extend(enumerate_rank(chi, rank, allow_two_gons)?);
    }
    Ok(out)
}

/// Candidates split by the orientability obstructions for gems.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Admissibility {
    /// Rank-3 candidates: every such type is compatible with the surface.
    pub admissible: Vec<CandidateType>,
    /// Higher-rank candidates that the obstructions do not rule out.
    pub not_excluded: Vec<CandidateType>,
    /// Higher-rank candidates ruled out.
    pub removed: Vec<CandidateType>,
}

/// Applies the obstructions for gems of rank at least 4 embedding regularly
/// on the surface with characteristic `chi`.
///
/// For odd `chi` the surface is non-orientable with odd genus `2 − χ`. A
/// bipartite graph embeds only on orientable surfaces, and a gem of a
/// manifold of dimension at least 3 embeds regularly on a non-orientable
/// surface only of even genus, so every rank ≥ 4 candidate is removed. For
/// even `chi` neither obstruction applies and higher ranks are only flagged.
pub fn gem_admissible_types(chi: i64) -> Result<Admissibility, EnumError> {
    let all = enumerate_types(chi, false)?;
    let mut report = Admissibility::default();
    for t in all {
        if t.rank() == 3 {
            report.admissible.push(t);
        } else if chi % 2 != 0 {
            report.removed.push(t);
        } else {
            report.not_excluded.push(t);
        }
    }
    Ok(report)
}
