//! Surface recognition for 3-colored graphs and a three-valued manifold test
//! for higher ranks.
//!
//! A colored graph of rank `d + 1` encodes a closed manifold iff every vertex
//! link is a `(d−1)`-sphere; links are the rank-`d` residues. Every residue
//! on three colors of a manifold gem must therefore be a 2-sphere (χ = 2),
//! which is the necessary condition checked here. Spheres are certified by
//! cancelling dipoles until the 2-vertex graph remains.

use std::fmt;
use std::str::FromStr;

use crate::embedding::{regular_embedding, CyclicPermutation};
use crate::error::GemError;
use crate::gem::{Color, Gem};

/// A closed connected surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Surface {
    pub orientable: bool,
    /// Orientable genus `g`, or the number of cross-caps `k`.
    pub genus: u32,
    pub chi: i64,
}

impl Surface {
    /// The orientable surface of genus `g`.
    pub fn orientable(genus: u32) -> Surface {
        Surface {
            orientable: true,
            genus,
            chi: 2 - 2 * genus as i64,
        }
    }

    /// The connected sum of `k ≥ 1` projective planes.
    pub fn non_orientable(crosscaps: u32) -> Surface {
        assert!(
            crosscaps >= 1,
            "a non-orientable surface has at least one cross-cap"
        );
        Surface {
            orientable: false,
            genus: crosscaps,
            chi: 2 - crosscaps as i64,
        }
    }

    /// The surface with the given characteristic and orientability, if any.
    pub fn from_chi(chi: i64, orientable: bool) -> Option<Surface> {
        if orientable {
            (chi <= 2 && chi % 2 == 0).then(|| Surface::orientable(((2 - chi) / 2) as u32))
        } else {
            (chi <= 1).then(|| Surface::non_orientable((2 - chi) as u32))
        }
    }

    /// `S2`, `S_g`, `RP2` or `#kRP2`.
    pub fn name(&self) -> String {
        match (self.orientable, self.genus) {
            (true, 0) => "S2".into(),
            (true, g) => format!("S_{g}"),
            (false, 1) => "RP2".into(),
            (false, k) => format!("#{k}RP2"),
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Surface {
    type Err = String;

    fn from_str(s: &str) -> Result<Surface, String> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.replace('²', "2");
        let bad = || format!("unknown surface `{s}` (expected S2, S_g, RP2 or #kRP2)");
        match t.as_str() {
            "S2" | "S^2" => return Ok(Surface::orientable(0)),
            "RP2" => return Ok(Surface::non_orientable(1)),
            _ => {}
        }
        if let Some(g) = t.strip_prefix("S_") {
            return g.parse().map(Surface::orientable).map_err(|_| bad());
        }
        if let Some(k) = t.strip_prefix('#').and_then(|r| r.strip_suffix("RP2")) {
            return match k.parse::<u32>() {
                Ok(k) if k >= 1 => Ok(Surface::non_orientable(k)),
                _ => Err(bad()),
            };
        }
        Err(bad())
    }
}

/// The surface represented by a connected 3-colored graph.
pub fn surface_of(gem: &Gem) -> Result<Surface, GemError> {
    if gem.color_count() != 3 {
        return Err(GemError::WrongRank {
            expected: 3,
            found: gem.color_count(),
        });
    }
    let report = regular_embedding(gem, &CyclicPermutation::identity(3))?;
    Ok(
        Surface::from_chi(report.euler_characteristic, report.orientable)
            .expect("a 3-colored graph always represents a surface"),
    )
}

/// Euler characteristic of a connected 3-colored graph: `V − E + F` with
/// `F` the number of bi-colored cycles.
fn chi3(gem: &Gem) -> i64 {
    let n = gem.n_vertices() as i64;
    let f = (gem.bicolored_cycle_count(0, 1)
        + gem.bicolored_cycle_count(1, 2)
        + gem.bicolored_cycle_count(0, 2)) as i64;
    n - 3 * n / 2 + f
}

/// A residue on three colors whose surface is not a sphere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkWitness {
    /// The color whose complementary residue (the vertex link) contains the
    /// failing component; the smallest such color.
    pub link_color: Color,
    /// The three residue colors.
    pub colors: Vec<Color>,
    /// Vertices of the failing component, ascending.
    pub vertices: Vec<usize>,
    /// Its Euler characteristic (≠ 2).
    pub chi: i64,
}

impl LinkWitness {
    /// Recomputes the failure from scratch.
    pub fn verify(&self, gem: &Gem) -> bool {
        if self.colors.len() != 3 || self.colors.contains(&self.link_color) {
            return false;
        }
        let Ok(residues) = gem.residue(&self.colors) else {
            return false;
        };
        residues.iter().any(|r| {
            let mut vs = r.vertices.clone();
            vs.sort_unstable();
            if vs != self.vertices {
                return false;
            }
            let surface =
                surface_of(&r.gem).expect("residue components are connected 3-colored graphs");
            surface.chi == self.chi && self.chi != 2
        })
    }
}

impl fmt::Display for LinkWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let colors: Vec<String> = self.colors.iter().map(|c| c.to_string()).collect();
        write!(
            f,
            "link of color {}: {{{}}}-residue on {} vertices has chi={}",
            self.link_color,
            colors.join(","),
            self.vertices.len(),
            self.chi
        )
    }
}

/// Outcome of the manifold test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ManifoldStatus {
    /// Every link certified a sphere; the trail records how.
    Manifold { trail: Vec<String> },
    /// Some link is not a sphere.
    NotManifold(LinkWitness),
    /// Necessary conditions hold but some link could not be certified.
    Unknown { trail: Vec<String> },
}

impl ManifoldStatus {
    pub fn is_manifold(&self) -> bool {
        matches!(self, ManifoldStatus::Manifold { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            ManifoldStatus::Manifold { .. } => "manifold",
            ManifoldStatus::NotManifold(_) => "not-manifold",
            ManifoldStatus::Unknown { .. } => "unknown",
        }
    }
}

fn triples(colors: usize) -> Vec<Vec<Color>> {
    let mut out = Vec::new();
    for a in 0..colors {
        for b in a + 1..colors {
            for c in b + 1..colors {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

/// The lexicographically first residue on three colors that is not a sphere.
fn first_bad_triple(gem: &Gem) -> Option<LinkWitness> {
    let colors = gem.color_count();
    for triple in triples(colors) {
        for r in gem.residue(&triple).expect("valid colors") {
            let chi = chi3(&r.gem);
            if chi != 2 {
                let link_color = (0..colors)
                    .find(|c| !triple.contains(c))
                    .expect("rank above 3");
                let mut vertices = r.vertices;
                vertices.sort_unstable();
                return Some(LinkWitness {
                    link_color,
                    colors: triple,
                    vertices,
                    chi,
                });
            }
        }
    }
    None
}

/// Three-valued manifold test.
pub fn manifold_status(gem: &Gem) -> Result<ManifoldStatus, GemError> {
    gem.require_connected()?;
    let colors = gem.color_count();
    if colors <= 3 {
        return Ok(ManifoldStatus::Manifold {
            trail: vec!["every connected 3-colored graph is a surface".into()],
        });
    }
    if let Some(w) = first_bad_triple(gem) {
        return Ok(ManifoldStatus::NotManifold(w));
    }
    match colors {
        4 => Ok(ManifoldStatus::Manifold {
            trail: vec!["every vertex link has chi=2".into()],
        }),
        5 => {
            let mut trail = Vec::new();
            let mut certified = true;
            for c in 0..colors {
                let rest: Vec<Color> = (0..colors).filter(|&x| x != c).collect();
                for (i, r) in gem
                    .residue(&rest)
                    .expect("valid colors")
                    .into_iter()
                    .enumerate()
                {
                    let ok = sphere_certify(&r.gem)?;
                    certified &= ok;
                    trail.push(format!(
                        "link of color {c}, component {i} ({} vertices): {}",
                        r.gem.n_vertices(),
                        if ok { "certified S3" } else { "not certified" }
                    ));
                }
            }
            Ok(if certified {
                ManifoldStatus::Manifold { trail }
            } else {
                ManifoldStatus::Unknown { trail }
            })
        }
        _ => Ok(ManifoldStatus::Unknown {
            trail: vec![format!(
                "rank {colors}: residues on three colors are spheres; higher links not checked"
            )],
        }),
    }
}

/// Colors joining `x` and `y`.
fn joining_colors(gem: &Gem, x: usize, y: usize) -> Vec<Color> {
    (0..gem.color_count())
        .filter(|&c| gem.neighbor(c, x) == y)
        .collect()
}

/// Whether `x` and `y` form a dipole: they are joined by `1 ≤ k ≤ d` edges
/// and lie in different components of the residue on the remaining colors.
pub fn is_dipole(gem: &Gem, x: usize, y: usize) -> bool {
    if x == y || x == 0 || y == 0 || x > gem.n_vertices() || y > gem.n_vertices() {
        return false;
    }
    let joined = joining_colors(gem, x, y);
    if joined.is_empty() || joined.len() == gem.color_count() {
        return false;
    }
    let rest: Vec<Color> = (0..gem.color_count())
        .filter(|c| !joined.contains(c))
        .collect();
    // BFS from x over `rest`
    let mut seen = vec![false; gem.n_vertices() + 1];
    let mut stack = vec![x];
    seen[x] = true;
    while let Some(u) = stack.pop() {
        for &c in &rest {
            let v = gem.neighbor(c, u);
            if v == y {
                return false;
            }
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    true
}

/// Deletes the dipole `{x, y}` and welds the hanging edges color-wise.
pub fn cancel_dipole(gem: &Gem, x: usize, y: usize) -> Option<Gem> {
    if !is_dipole(gem, x, y) {
        return None;
    }
    let n = gem.n_vertices();
    let mut tables: Vec<Vec<usize>> = (0..gem.color_count())
        .map(|c| gem.matching(c).to_vec())
        .collect();
    for t in tables.iter_mut().filter(|t| t[x] != y) {
        let (xp, yp) = (t[x], t[y]);
        t[xp] = yp;
        t[yp] = xp;
    }
    // compact ids, skipping x and y
    let mut new_id = vec![0usize; n + 1];
    let mut next = 0;
    for v in 1..=n {
        if v != x && v != y {
            next += 1;
            new_id[v] = next;
        }
    }
    let matchings = tables
        .iter()
        .map(|t| {
            let mut m = vec![0usize; n - 1];
            for v in 1..=n {
                if new_id[v] != 0 {
                    m[new_id[v]] = new_id[t[v]];
                }
            }
            m
        })
        .collect();
    Some(Gem::from_raw(n - 2, matchings))
}

/// Inserts two new vertices `x = n+1`, `y = n+2` joined by the colors in
/// `colors`. For the `i`-th color `c` outside `colors` (ascending), the
/// `c`-edge at `anchors[i]` is cut and its ends reattached to `x` and `y`.
///
/// The result is a dipole only for suitable anchors; check with
/// [`is_dipole`]. Splitting a single edge (all but one color joining) always
/// yields one.
pub fn insert_dipole(
    gem: &Gem,
    colors: &[Color],
    anchors: &[usize],
) -> Result<(Gem, usize, usize), GemError> {
    let k = gem.color_count();
    for &c in colors {
        if c >= k {
            return Err(GemError::ColorOutOfRange { color: c, count: k });
        }
    }
    let rest: Vec<Color> = (0..k).filter(|c| !colors.contains(c)).collect();
    if colors.is_empty() {
        return Err(GemError::EmptyColorSet);
    }
    if rest.is_empty() || anchors.len() != rest.len() {
        return Err(GemError::WrongRank {
            expected: rest.len(),
            found: anchors.len(),
        });
    }
    let n = gem.n_vertices();
    let (x, y) = (n + 1, n + 2);
    let mut matchings: Vec<Vec<usize>> = (0..k)
        .map(|c| {
            let mut m = gem.matching(c).to_vec();
            m.extend([0, 0]);
            m
        })
        .collect();
    for &c in colors {
        matchings[c][x] = y;
        matchings[c][y] = x;
    }
    for (&c, &u) in rest.iter().zip(anchors) {
        if u == 0 || u > n {
            return Err(GemError::VertexOutOfRange {
                color: c,
                vertex: u,
                n,
            });
        }
        let w = matchings[c][u];
        matchings[c][u] = x;
        matchings[c][x] = u;
        matchings[c][w] = y;
        matchings[c][y] = w;
    }
    Ok((Gem::from_raw(n + 2, matchings), x, y))
}

/// The first dipole in vertex order, if any.
pub fn find_dipole(gem: &Gem) -> Option<(usize, usize)> {
    for x in gem.vertices() {
        for c in 0..gem.color_count() {
            let y = gem.neighbor(c, x);
            if x < y && is_dipole(gem, x, y) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Sufficient sphere test: `true` means the graph represents the
/// `d`-sphere; `false` means "not certified".
pub fn sphere_certify(gem: &Gem) -> Result<bool, GemError> {
    gem.require_connected()?;
    match gem.color_count() {
        2 => return Ok(true),
        3 => return Ok(chi3(gem) == 2),
        _ => {}
    }
    if first_bad_triple(gem).is_some() {
        return Ok(false);
    }
    let mut g = gem.clone();
    while g.n_vertices() > 2 {
        let Some((x, y)) = find_dipole(&g) else {
            return Ok(false);
        };
        g = cancel_dipole(&g, x, y).expect("found dipoles cancel");
    }
    Ok(true)
}
