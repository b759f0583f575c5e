//! Canonical forms and isomorphism of colored graphs.
//!
//! For a connected gem, fixing a start vertex and an order on the colors
//! determines a unique breadth-first numbering of all vertices (every vertex
//! has exactly one neighbor per color). The canonical code is the
//! lexicographically least adjacency listing over all start vertices, and in
//! permutable mode over all color permutations as well.

use crate::error::GemError;
use crate::gem::{Color, Gem};

/// Whether isomorphisms may also permute the colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ColorMode {
    /// Vertex relabeling only.
    Fixed,
    /// Vertex relabeling plus an arbitrary color permutation.
    #[default]
    Permutable,
}

/// A witness `(vertex_map, color_map)` between two colored graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    /// `vertex_map[u - 1]` is the image of source vertex `u`.
    pub vertex_map: Vec<usize>,
    /// `color_map[c]` is the image of source color `c`.
    pub color_map: Vec<Color>,
}

impl Isomorphism {
    /// Checks the witness edge by edge.
    pub fn verify(&self, source: &Gem, target: &Gem) -> bool {
        let n = source.n_vertices();
        if n != target.n_vertices()
            || source.color_count() != target.color_count()
            || self.vertex_map.len() != n
            || self.color_map.len() != source.color_count()
        {
            return false;
        }
        if !is_permutation(&self.vertex_map, 1) || !is_permutation(&self.color_map, 0) {
            return false;
        }
        (0..source.color_count()).all(|c| {
            let tc = self.color_map[c];
            (1..=n).all(|u| {
                let v = source.neighbor(c, u);
                target.neighbor(tc, self.vertex_map[u - 1]) == self.vertex_map[v - 1]
            })
        })
    }
}

fn is_permutation(xs: &[usize], base: usize) -> bool {
    let mut seen = vec![false; xs.len()];
    xs.iter()
        .all(|&x| x >= base && x - base < xs.len() && !std::mem::replace(&mut seen[x - base], true))
}

/// A canonical code plus the labeling that produces it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Labeling {
    pub code: Vec<u8>,
    /// `label[v]` is the canonical id (1-based) of vertex `v`; slot 0 unused.
    pub label: Vec<usize>,
    /// `color_perm[c]` is the canonical color of color `c`.
    pub color_perm: Vec<Color>,
}

fn push_u16(out: &mut Vec<u8>, x: usize) {
    let x = u16::try_from(x).expect("canonical codes support at most 65535 vertices");
    out.extend_from_slice(&x.to_be_bytes());
}

/// Breadth-first labeling of the component of `start`, colors visited in the
/// order `order` (canonical color k is original color `order[k]`).
///
/// Writes the adjacency listing of the component into `code` and aborts early
/// (returning `false`) once the listing exceeds `bound`.
fn bfs_code(
    gem: &Gem,
    order: &[Color],
    start: usize,
    label: &mut [usize],
    queue: &mut Vec<usize>,
    code: &mut Vec<usize>,
    bound: Option<&[usize]>,
) -> bool {
    for x in label.iter_mut() {
        *x = 0;
    }
    queue.clear();
    code.clear();
    label[start] = 1;
    queue.push(start);
    let mut head = 0;
    let mut tight = bound.is_some();
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for &c in order {
            let v = gem.neighbor(c, u);
            if label[v] == 0 {
                queue.push(v);
                label[v] = queue.len();
            }
            let entry = label[v];
            if tight {
                let b = bound.unwrap()[code.len()];
                if entry > b {
                    return false;
                }
                if entry < b {
                    tight = false;
                }
            }
            code.push(entry);
        }
    }
    true
}

fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..k).collect();
    fn heap(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(perm.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            perm.swap(j, k - 1);
        }
    }
    heap(k, &mut perm, &mut out);
    out.sort();
    out
}

/// Color orders to minimize over.
fn color_orders(colors: usize, mode: ColorMode) -> Vec<Vec<Color>> {
    match mode {
        ColorMode::Fixed => vec![(0..colors).collect()],
        ColorMode::Permutable => all_permutations(colors),
    }
}

/// Least code of one connected component under a fixed color order.
fn component_code(gem: &Gem, order: &[Color], comp: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let n = gem.n_vertices();
    let mut label = vec![0usize; n + 1];
    let mut queue = Vec::with_capacity(comp.len());
    let mut code = Vec::with_capacity(comp.len() * order.len());
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    for &s in comp {
        let ok = bfs_code(
            gem,
            order,
            s,
            &mut label,
            &mut queue,
            &mut code,
            best.as_ref().map(|b| b.0.as_slice()),
        );
        if ok && best.as_ref().is_none_or(|b| code < b.0) {
            best = Some((code.clone(), queue.clone()));
        }
    }
    best.expect("components are nonempty")
}

/// Canonical labeling of an arbitrary (possibly disconnected) gem: the
/// per-component codes are sorted by (size, code) and concatenated.
pub(crate) fn canonical_labeling(gem: &Gem, mode: ColorMode) -> Labeling {
    let n = gem.n_vertices();
    let colors = gem.color_count();
    let comps = gem.components();
    let mut best: Option<(Vec<usize>, Vec<usize>, Vec<Color>)> = None;
    for order in color_orders(colors, mode) {
        let mut parts: Vec<(Vec<usize>, Vec<usize>)> = comps
            .iter()
            .map(|comp| component_code(gem, &order, comp))
            .collect();
        parts.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        let mut code = Vec::with_capacity(n * colors);
        let mut visit = Vec::with_capacity(n);
        for (c, v) in parts {
            let offset = visit.len();
            code.extend(c.into_iter().map(|x| x + offset));
            visit.extend(v);
        }
        if best.as_ref().is_none_or(|b| code < b.0) {
            best = Some((code, visit, order));
        }
    }
    let (code, visit, order) = best.expect("at least one color order");
    let mut label = vec![0usize; n + 1];
    for (i, &v) in visit.iter().enumerate() {
        label[v] = i + 1;
    }
    let mut color_perm = vec![0; colors];
    for (k, &c) in order.iter().enumerate() {
        color_perm[c] = k;
    }
    let mut bytes = Vec::with_capacity(3 + 2 * code.len());
    push_u16(&mut bytes, n);
    bytes.push(u8::try_from(colors).expect("at most 255 colors"));
    for x in code {
        push_u16(&mut bytes, x);
    }
    Labeling {
        code: bytes,
        label,
        color_perm,
    }
}

/// The canonical byte string of a connected gem.
///
/// Two connected gems have equal strings iff they are isomorphic in `mode`.
/// Byte order agrees with numeric order of the underlying code.
pub fn canonical_form(gem: &Gem, mode: ColorMode) -> Result<Vec<u8>, GemError> {
    gem.require_connected()?;
    Ok(canonical_labeling(gem, mode).code)
}

/// The gem relabeled into its canonical representative.
pub fn canonical_gem(gem: &Gem, mode: ColorMode) -> Gem {
    let lab = canonical_labeling(gem, mode);
    gem.relabel(&lab.label[1..]).permute_colors(&lab.color_perm)
}

/// An isomorphism `g1 -> g2`, if one exists.
pub fn isomorphic(g1: &Gem, g2: &Gem, mode: ColorMode) -> Option<Isomorphism> {
    if g1.n_vertices() != g2.n_vertices() || g1.color_count() != g2.color_count() {
        return None;
    }
    let a = canonical_labeling(g1, mode);
    let b = canonical_labeling(g2, mode);
    if a.code != b.code {
        return None;
    }
    let n = g1.n_vertices();
    let mut inv_b = vec![0usize; n + 1];
    for v in 1..=n {
        inv_b[b.label[v]] = v;
    }
    let mut inv_bc = vec![0usize; g2.color_count()];
    for (c, &k) in b.color_perm.iter().enumerate() {
        inv_bc[k] = c;
    }
    let iso = Isomorphism {
        vertex_map: (1..=n).map(|u| inv_b[a.label[u]]).collect(),
        color_map: a.color_perm.iter().map(|&k| inv_bc[k]).collect(),
    };
    debug_assert!(iso.verify(g1, g2));
    Some(iso)
}
