//! Regular edge-colored graphs stored as one fixed-point-free involution per
//! color.
//!
//! Vertices are numbered `1..=n`. For every color `c` the table
//! `matchings[c]` sends a vertex to its unique `c`-neighbor, so neighbor
//! lookup is a single index and the "perfect matching, no loops" invariant is
//! structural. Parallel edges of distinct colors are allowed; an edge is
//! always a `(u, v, color)` triple.

use std::collections::VecDeque;

use crate::error::GemError;

/// A color index in `0..=d`.
pub type Color = usize;

/// A validated `(d+1)`-regular properly edge-colored loopless multigraph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gem {
    n: usize,
    // matchings[c][v] for v in 1..=n; slot 0 is unused.
    matchings: Vec<Vec<usize>>,
}

impl std::fmt::Debug for Gem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut s = f.debug_struct("Gem");
        s.field("n", &self.n);
        for c in 0..self.color_count() {
            s.field(&format!("color{c}"), &self.color_pairs(c));
        }
        s.finish()
    }
}

/// A connected component of a residue, re-indexed as a gem in its own right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residue {
    /// The component with colors renumbered `0..k` and vertices `1..=m`.
    pub gem: Gem,
    /// `colors[i]` is the parent color carried by residue color `i`.
    pub colors: Vec<Color>,
    /// `vertices[j]` is the parent id of residue vertex `j + 1`.
    pub vertices: Vec<usize>,
}

impl Gem {
    /// Builds a gem from per-color neighbor tables.
    ///
    /// `tables[c][i]` is the `c`-neighbor of vertex `i + 1`, itself given as a
    /// 1-based id.
    pub fn build(n: usize, tables: Vec<Vec<usize>>) -> Result<Gem, GemError> {
        if n % 2 == 1 {
            return Err(GemError::OddVertexCount(n));
        }
        if n < 2 {
            return Err(GemError::TooFewVertices(n));
        }
        if tables.len() < 2 {
            return Err(GemError::TooFewColors(tables.len()));
        }
        let mut matchings = Vec::with_capacity(tables.len());
        for (c, table) in tables.into_iter().enumerate() {
            if table.len() != n {
                return Err(GemError::MissingColor(c));
            }
            let mut m = Vec::with_capacity(n + 1);
            m.push(0);
            m.extend(table);
            matchings.push(m);
        }
        let gem = Gem { n, matchings };
        gem.validate()?;
        Ok(gem)
    }

    /// Builds a gem from the matched pairs of each color.
    pub fn from_pairs(n: usize, pairs: &[Vec<(usize, usize)>]) -> Result<Gem, GemError> {
        if n % 2 == 1 {
            return Err(GemError::OddVertexCount(n));
        }
        let mut tables = Vec::with_capacity(pairs.len());
        for (c, list) in pairs.iter().enumerate() {
            let mut table = vec![0usize; n];
            for &(a, b) in list {
                for (x, y) in [(a, b), (b, a)] {
                    if x == 0 || x > n {
                        return Err(GemError::VertexOutOfRange {
                            color: c,
                            vertex: x,
                            n,
                        });
                    }
                    if table[x - 1] != 0 {
                        return Err(GemError::NotInvolution {
                            color: c,
                            vertex: x,
                        });
                    }
                    table[x - 1] = y;
                }
            }
            if table.contains(&0) {
                return Err(GemError::MissingColor(c));
            }
            tables.push(table);
        }
        Gem::build(n, tables)
    }

    fn validate(&self) -> Result<(), GemError> {
        let n = self.n;
        for (c, m) in self.matchings.iter().enumerate() {
            for u in 1..=n {
                let v = m[u];
                if v == 0 || v > n {
                    return Err(GemError::VertexOutOfRange {
                        color: c,
                        vertex: v,
                        n,
                    });
                }
                if v == u {
                    return Err(GemError::FixedPoint {
                        color: c,
                        vertex: u,
                    });
                }
            }
            for u in 1..=n {
                if m[m[u]] != u {
                    return Err(GemError::NotInvolution {
                        color: c,
                        vertex: u,
                    });
                }
            }
        }
        Ok(())
    }

    /// The 2-vertex gem with `colors` parallel edges.
    pub fn dipole_gem(colors: usize) -> Gem {
        Gem {
            n: 2,
            matchings: vec![vec![0, 2, 1]; colors],
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    /// Number of colors, `d + 1`.
    pub fn color_count(&self) -> usize {
        self.matchings.len()
    }

    /// The dimension `d` of the represented complex.
    pub fn dim(&self) -> usize {
        self.color_count() - 1
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    /// The `color`-neighbor of `v`.
    #[inline]
    pub fn neighbor(&self, color: Color, v: usize) -> usize {
        self.matchings[color][v]
    }

    /// The neighbor table of `color`, indexed by vertex (slot 0 unused).
    pub fn matching(&self, color: Color) -> &[usize] {
        &self.matchings[color]
    }

    /// The `n/2` pairs `(a, b)` with `a < b` joined by `color`.
    pub fn color_pairs(&self, color: Color) -> Vec<(usize, usize)> {
        let m = &self.matchings[color];
        (1..=self.n)
            .filter(|&u| u < m[u])
            .map(|u| (u, m[u]))
            .collect()
    }

    /// Every edge as `(u, v, color)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize, Color)> {
        (0..self.color_count())
            .flat_map(|c| self.color_pairs(c).into_iter().map(move |(a, b)| (a, b, c)))
            .collect()
    }

    fn check_color(&self, c: Color) -> Result<(), GemError> {
        if c >= self.color_count() {
            Err(GemError::ColorOutOfRange {
                color: c,
                count: self.color_count(),
            })
        } else {
            Ok(())
        }
    }

    /// Vertex sets of the connected components spanned by `colors`, each
    /// sorted, ordered by smallest vertex.
    pub fn components_with(&self, colors: &[Color]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n + 1];
        let mut out = Vec::new();
        for s in 1..=self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &c in colors {
                    let v = self.matchings[c][u];
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Vertex sets of the connected components of the whole graph.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let all: Vec<Color> = (0..self.color_count()).collect();
        self.components_with(&all)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    pub(crate) fn require_connected(&self) -> Result<(), GemError> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(GemError::Disconnected)
        }
    }

    /// A proper 2-coloring of the vertices, if one exists.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        const UNSET: u8 = 2;
        let mut side = vec![UNSET; self.n + 1];
        for s in 1..=self.n {
            if side[s] != UNSET {
                continue;
            }
            side[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for m in &self.matchings {
                    let v = m[u];
                    if side[v] == UNSET {
                        side[v] = 1 - side[u];
                        stack.push(v);
                    } else if side[v] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Components of the `{i, j}`-subgraph as cyclic vertex sequences.
    ///
    /// Each cycle starts at its smallest vertex and leaves it along color `i`;
    /// cycles are ordered by starting vertex.
    pub fn bicolored_cycles(&self, i: Color, j: Color) -> Result<Vec<Vec<usize>>, GemError> {
        self.check_color(i)?;
        self.check_color(j)?;
        if i == j {
            return Err(GemError::SameColor(i));
        }
        let (mi, mj) = (&self.matchings[i], &self.matchings[j]);
        let mut seen = vec![false; self.n + 1];
        let mut out = Vec::new();
        for s in 1..=self.n {
            if seen[s] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut u = s;
            loop {
                seen[u] = true;
                cycle.push(u);
                let v = mi[u];
                seen[v] = true;
                cycle.push(v);
                u = mj[v];
                if u == s {
                    break;
                }
            }
            out.push(cycle);
        }
        Ok(out)
    }

    /// Number of `{i, j}`-cycles, without materializing them.
    pub(crate) fn bicolored_cycle_count(&self, i: Color, j: Color) -> usize {
        let (mi, mj) = (&self.matchings[i], &self.matchings[j]);
        let mut seen = vec![false; self.n + 1];
        let mut count = 0;
        for s in 1..=self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut u = s;
            loop {
                seen[u] = true;
                let v = mi[u];
                seen[v] = true;
                u = mj[v];
                if u == s {
                    break;
                }
            }
        }
        count
    }

    /// Length of the `{i, j}`-cycle through `v`.
    pub(crate) fn bicolored_cycle_len(&self, i: Color, j: Color, v: usize) -> usize {
        let (mi, mj) = (&self.matchings[i], &self.matchings[j]);
        let mut len = 0;
        let mut u = v;
        loop {
            u = mj[mi[u]];
            len += 2;
            if u == v {
                return len;
            }
        }
    }

    /// Components of the subgraph spanned by `colors`, each re-indexed as a
    /// gem over the restricted color set.
    pub fn residue(&self, colors: &[Color]) -> Result<Vec<Residue>, GemError> {
        if colors.is_empty() {
            return Err(GemError::EmptyColorSet);
        }
        let mut colors = colors.to_vec();
        colors.sort_unstable();
        colors.dedup();
        for &c in &colors {
            self.check_color(c)?;
        }
        if colors.len() < 2 {
            return Err(GemError::SingletonColorSet);
        }
        let mut out = Vec::new();
        for comp in self.components_with(&colors) {
            let mut local = vec![0usize; self.n + 1];
            for (k, &v) in comp.iter().enumerate() {
                local[v] = k + 1;
            }
            let matchings = colors
                .iter()
                .map(|&c| {
                    let mut m = Vec::with_capacity(comp.len() + 1);
                    m.push(0);
                    m.extend(comp.iter().map(|&v| local[self.matchings[c][v]]));
                    m
                })
                .collect();
            out.push(Residue {
                gem: Gem {
                    n: comp.len(),
                    matchings,
                },
                colors: colors.clone(),
                vertices: comp,
            });
        }
        Ok(out)
    }

    /// Relabels vertices: old vertex `v` becomes `perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Gem {
        assert_eq!(perm.len(), self.n, "relabeling must cover every vertex");
        let matchings = self
            .matchings
            .iter()
            .map(|m| {
                let mut out = vec![0usize; self.n + 1];
                for u in 1..=self.n {
                    out[perm[u - 1]] = perm[m[u] - 1];
                }
                out
            })
            .collect();
        Gem {
            n: self.n,
            matchings,
        }
    }

    /// Recolors edges: old color `c` becomes `perm[c]`.
    pub fn permute_colors(&self, perm: &[Color]) -> Gem {
        assert_eq!(
            perm.len(),
            self.color_count(),
            "color permutation must cover every color"
        );
        let mut matchings = vec![Vec::new(); self.color_count()];
        for (c, m) in self.matchings.iter().enumerate() {
            matchings[perm[c]] = m.clone();
        }
        Gem {
            n: self.n,
            matchings,
        }
    }

    /// Places `other` after `self`, shifting its vertex ids by `self.n`.
    pub fn disjoint_union(&self, other: &Gem) -> Result<Gem, GemError> {
        if self.color_count() != other.color_count() {
            return Err(GemError::WrongRank {
                expected: self.color_count(),
                found: other.color_count(),
            });
        }
        let n = self.n + other.n;
        let matchings = self
            .matchings
            .iter()
            .zip(&other.matchings)
            .map(|(a, b)| {
                let mut m = a.clone();
                m.extend(b[1..].iter().map(|&v| v + self.n));
                m
            })
            .collect();
        Ok(Gem { n, matchings })
    }

    /// Raw constructor for callers that maintain the invariants themselves.
    pub(crate) fn from_raw(n: usize, matchings: Vec<Vec<usize>>) -> Gem {
        let gem = Gem { n, matchings };
        debug_assert!(gem.validate().is_ok());
        gem
    }
}
