//! Regular embeddings of colored graphs and semi-equivelar type detection.
//!
//! For a cyclic permutation `ε` of the colors, a connected colored graph
//! embeds on a closed surface whose faces are exactly the `{εᵢ, εᵢ₊₁}`
//! bi-colored cycles.

use std::fmt;

use crate::error::GemError;
use crate::gem::{Color, Gem};
use crate::setype::SeType;

/// A cyclic ordering of the colors, up to rotation and reversal.
///
/// Stored rotated so that `ε₀ = 0` and reversed if needed so that `ε₁ < ε_d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicPermutation(Vec<Color>);

impl CyclicPermutation {
    pub fn new(seq: Vec<Color>) -> Result<CyclicPermutation, GemError> {
        let k = seq.len();
        let mut seen = vec![false; k];
        for &c in &seq {
            if c >= k || std::mem::replace(&mut seen[c], true) {
                return Err(GemError::InvalidPermutation(seq));
            }
        }
        if k == 0 {
            return Err(GemError::InvalidPermutation(seq));
        }
        let start = seq.iter().position(|&c| c == 0).unwrap();
        let mut rot: Vec<Color> = (0..k).map(|i| seq[(start + i) % k]).collect();
        if k > 2 && rot[1] > rot[k - 1] {
            rot[1..].reverse();
        }
        Ok(CyclicPermutation(rot))
    }

    /// `(0, 1, …, k−1)`.
    pub fn identity(colors: usize) -> CyclicPermutation {
        CyclicPermutation((0..colors).collect())
    }

    /// One representative per class, in ascending order: `(k−1)!/2` classes
    /// for `k ≥ 3` colors, one otherwise.
    pub fn all(colors: usize) -> Vec<CyclicPermutation> {
        let mut out = Vec::new();
        let mut rest: Vec<Color> = (1..colors).collect();
        fn rec(prefix: &mut Vec<Color>, rest: &mut Vec<Color>, out: &mut Vec<CyclicPermutation>) {
            if rest.is_empty() {
                let k = prefix.len();
                if k <= 2 || prefix[1] < prefix[k - 1] {
                    out.push(CyclicPermutation(prefix.clone()));
                }
                return;
            }
            for i in 0..rest.len() {
                let c = rest.remove(i);
                prefix.push(c);
                rec(prefix, rest, out);
                prefix.pop();
                rest.insert(i, c);
            }
        }
        rec(&mut vec![0], &mut rest, &mut out);
        out
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    /// Number of colors.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The consecutive pairs `(εᵢ, εᵢ₊₁)`, indices mod `d + 1`.
    pub fn pairs(&self) -> Vec<(Color, Color)> {
        let k = self.0.len();
        (0..k).map(|i| (self.0[i], self.0[(i + 1) % k])).collect()
    }
}

impl fmt::Display for CyclicPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The faces of one consecutive color pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceClass {
    pub colors: (Color, Color),
    pub cycles: Vec<Vec<usize>>,
}

/// Combinatorial data of the regular embedding for one `ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub permutation: CyclicPermutation,
    /// Entry `i` holds the `{εᵢ, εᵢ₊₁}`-cycles.
    pub faces: Vec<FaceClass>,
    pub v_count: usize,
    pub e_count: usize,
    pub f_count: usize,
    pub euler_characteristic: i64,
    pub orientable: bool,
}

fn check_permutation(gem: &Gem, eps: &CyclicPermutation) -> Result<(), GemError> {
    if eps.len() != gem.color_count() {
        return Err(GemError::PermutationColorMismatch {
            perm: eps.len(),
            graph: gem.color_count(),
        });
    }
    Ok(())
}

/// Faces, counts and Euler characteristic of the regular embedding for `eps`.
pub fn regular_embedding(gem: &Gem, eps: &CyclicPermutation) -> Result<EmbeddingReport, GemError> {
    gem.require_connected()?;
    check_permutation(gem, eps)?;
    let faces: Vec<FaceClass> = eps
        .pairs()
        .into_iter()
        .map(|(a, b)| FaceClass {
            colors: (a, b),
            cycles: gem.bicolored_cycles(a, b).expect("distinct colors"),
        })
        .collect();
    let v = gem.n_vertices();
    let e = v * gem.color_count() / 2;
    let f: usize = faces.iter().map(|fc| fc.cycles.len()).sum();
    Ok(EmbeddingReport {
        permutation: eps.clone(),
        faces,
        v_count: v,
        e_count: e,
        f_count: f,
        euler_characteristic: v as i64 - e as i64 + f as i64,
        orientable: gem.is_bipartite(),
    })
}

/// One report per cyclic permutation class, in [`CyclicPermutation::all`] order.
pub fn all_regular_embeddings(gem: &Gem) -> Result<Vec<EmbeddingReport>, GemError> {
    gem.require_connected()?;
    CyclicPermutation::all(gem.color_count())
        .iter()
        .map(|eps| regular_embedding(gem, eps))
        .collect()
}

/// Lengths of the faces around `v`: entry `i` is the length of the
/// `{εᵢ, εᵢ₊₁}`-cycle through `v`.
pub fn vertex_face_sequence(
    gem: &Gem,
    eps: &CyclicPermutation,
    v: usize,
) -> Result<Vec<usize>, GemError> {
    check_permutation(gem, eps)?;
    if v == 0 || v > gem.n_vertices() {
        return Err(GemError::VertexOutOfRange {
            color: 0,
            vertex: v,
            n: gem.n_vertices(),
        });
    }
    Ok(eps
        .pairs()
        .into_iter()
        .map(|(a, b)| gem.bicolored_cycle_len(a, b, v))
        .collect())
}

/// The semi-equivelar type for `eps`, if every color pair's faces have a
/// single common length.
pub fn semi_equivelar_type(gem: &Gem, eps: &CyclicPermutation) -> Result<Option<SeType>, GemError> {
    gem.require_connected()?;
    check_permutation(gem, eps)?;
    let n = gem.n_vertices();
    let mut seq = Vec::with_capacity(eps.len());
    for (a, b) in eps.pairs() {
        let len = gem.bicolored_cycle_len(a, b, 1);
        if gem.bicolored_cycle_count(a, b) * len != n {
            return Ok(None);
        }
        seq.push(len);
    }
    Ok(Some(
        SeType::new(seq, n).expect("face lengths are at least 2"),
    ))
}
