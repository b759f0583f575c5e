//! Semi-equivelar types `[(p0, …, pd); p]`.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use thiserror::Error;

/// A semi-equivelar type: the cyclic face-length sequence around every vertex
/// plus the vertex count.
///
/// The sequence is stored as the lexicographically smallest of its rotations
/// and reflections, so equality is equality of types.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeType {
    cycle: Vec<usize>,
    p: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid type `{input}`: {reason}")]
pub struct TypeParseError {
    pub input: String,
    pub reason: String,
}

impl SeType {
    /// Builds a type from any rotation/reflection of its face sequence.
    ///
    /// Face lengths must be at least 2, the sequence must have at least two
    /// entries and `p` must be positive. Parity and divisibility are left to
    /// [`crate::enumerator::check_type`].
    pub fn new(cycle: Vec<usize>, p: usize) -> Result<SeType, String> {
        if cycle.len() < 2 {
            return Err("a type needs at least two face lengths".into());
        }
        if let Some(q) = cycle.iter().find(|&&q| q < 2) {
            return Err(format!("face length {q} is below 2"));
        }
        if p == 0 {
            return Err("vertex count must be positive".into());
        }
        Ok(SeType {
            cycle: normalize(&cycle),
            p,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// The normalized cyclic sequence.
    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    /// Number of colors, `d + 1`.
    pub fn rank(&self) -> usize {
        self.cycle.len()
    }

    /// Face lengths sorted ascending.
    pub fn multiset(&self) -> Vec<usize> {
        let mut m = self.cycle.clone();
        m.sort_unstable();
        m
    }

    /// `χ / p = 1 − (d+1)/2 + Σ 1/pᵢ`, exactly.
    pub fn chi_over_p(&self) -> Ratio<i64> {
        let r = self.rank() as i64;
        self.cycle
            .iter()
            .fold(Ratio::from_integer(1) - Ratio::new(r, 2), |acc, &q| {
                acc + Ratio::new(1, q as i64)
            })
    }

    /// The Euler characteristic forced by the face-count identity, if integral.
    pub fn implied_chi(&self) -> Option<i64> {
        let chi = self.chi_over_p() * Ratio::from_integer(self.p as i64);
        chi.is_integer().then(|| chi.to_integer())
    }

    /// Whether the face-count identity holds for `chi` (exact arithmetic).
    pub fn satisfies_identity(&self, chi: i64) -> bool {
        self.chi_over_p() == Ratio::new(chi, self.p as i64)
    }

    /// The grouped rendering of the face sequence, e.g. `(6^2,8)`.
    ///
    /// Runs are grouped maximally without wrapping; among admissible
    /// rotations/reflections the one with the longest leading run wins, then
    /// the lexicographically smallest.
    pub fn groups(&self) -> Vec<(usize, usize)> {
        let n = self.cycle.len();
        if self.cycle.iter().all(|&q| q == self.cycle[0]) {
            return vec![(self.cycle[0], n)];
        }
        variants(&self.cycle)
            .into_iter()
            .filter(|s| s[0] != s[n - 1])
            .map(|s| {
                let g = group_runs(&s);
                (std::cmp::Reverse(g[0].1), s, g)
            })
            .min()
            .map(|(_, _, g)| g)
            .expect("a non-constant cycle has a run boundary")
    }
}

fn variants(cycle: &[usize]) -> Vec<Vec<usize>> {
    let n = cycle.len();
    let mut out = Vec::with_capacity(2 * n);
    for r in 0..n {
        let rot: Vec<usize> = (0..n).map(|i| cycle[(r + i) % n]).collect();
        let rev: Vec<usize> = (0..n).map(|i| rot[(n - i) % n]).collect();
        out.push(rot);
        out.push(rev);
    }
    out
}

/// Lexicographically smallest rotation or reflection.
pub(crate) fn normalize(cycle: &[usize]) -> Vec<usize> {
    variants(cycle).into_iter().min().expect("nonempty cycle")
}

fn group_runs(s: &[usize]) -> Vec<(usize, usize)> {
    let mut g: Vec<(usize, usize)> = Vec::new();
    for &q in s {
        match g.last_mut() {
            Some((last, k)) if *last == q => *k += 1,
            _ => g.push((q, 1)),
        }
    }
    g
}

impl fmt::Display for SeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[(")?;
        for (i, (q, k)) in self.groups().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if k == 1 {
                write!(f, "{q}")?;
            } else {
                write!(f, "{q}^{k}")?;
            }
        }
        write!(f, ");{}]", self.p)
    }
}

impl FromStr for SeType {
    type Err = TypeParseError;

    fn from_str(input: &str) -> Result<SeType, TypeParseError> {
        let err = |reason: &str| TypeParseError {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let body = s
            .strip_prefix("[(")
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| err("expected `[(t1,...,tk);p]`"))?;
        let (terms, p) = body
            .split_once(");")
            .ok_or_else(|| err("expected `);p` after the face list"))?;
        let p: usize = p.parse().map_err(|_| err("vertex count is not a number"))?;
        let mut cycle = Vec::new();
        for term in terms.split(',') {
            let (q, k) = match term.split_once('^') {
                Some((q, k)) => (q, k.parse::<usize>().map_err(|_| err("bad exponent"))?),
                None => (term, 1),
            };
            let q: usize = q.parse().map_err(|_| err("face length is not a number"))?;
            if k == 0 {
                return Err(err("exponent must be positive"));
            }
            cycle.extend(std::iter::repeat_n(q, k));
        }
        SeType::new(cycle, p).map_err(|reason| err(&reason))
    }
}
