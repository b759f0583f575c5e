//! The search against a generate-everything oracle on at most 8 vertices.

use std::collections::{BTreeMap, BTreeSet};

use gem_core::search::{search, SearchQuery};
use gem_core::{canonical_form, semi_equivelar_type, ColorMode, CyclicPermutation, Gem, SeType};

fn perfect_matchings(n: usize) -> Vec<Vec<usize>> {
    fn rec(m: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(u) = (1..m.len()).find(|&u| m[u] == 0) else {
            out.push(m[1..].to_vec());
            return;
        };
        for v in u + 1..m.len() {
            if m[v] == 0 {
                m[u] = v;
                m[v] = u;
                rec(m, out);
                m[u] = 0;
                m[v] = 0;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![0; n + 1], &mut out);
    out
}

/// Every connected 3-colored graph on `n` vertices, bucketed by type.
fn oracle(n: usize) -> BTreeMap<SeType, BTreeSet<Vec<u8>>> {
    let ms = perfect_matchings(n);
    let eps = CyclicPermutation::identity(3);
    let mut out: BTreeMap<SeType, BTreeSet<Vec<u8>>> = BTreeMap::new();
    for a in &ms {
        for b in &ms {
            for c in &ms {
                let g = Gem::build(n, vec![a.clone(), b.clone(), c.clone()]).unwrap();
                if !g.is_connected() {
                    continue;
                }
                if let Some(t) = semi_equivelar_type(&g, &eps).unwrap() {
                    out.entry(t)
                        .or_default()
                        .insert(canonical_form(&g, ColorMode::Permutable).unwrap());
                }
            }
        }
    }
    out
}

fn targets(n: usize) -> Vec<SeType> {
    let divisors: Vec<usize> = (2..=n)
        .step_by(2)
        .filter(|q| n.is_multiple_of(*q))
        .collect();
    let mut out = BTreeSet::new();
    for &a in &divisors {
        for &b in &divisors {
            for &c in &divisors {
                out.insert(SeType::new(vec![a, b, c], n).unwrap());
            }
        }
    }
    out.into_iter().collect()
}

#[test]
fn search_matches_oracle_up_to_eight_vertices() {
    for n in [2, 4, 6, 8] {
        let expected = oracle(n);
        for t in targets(n) {
            let r = search(&SearchQuery::new(t.clone())).unwrap();
            assert!(r.exhausted);
            let got: BTreeSet<Vec<u8>> = r
                .found
                .iter()
                .map(|g| canonical_form(g, ColorMode::Permutable).unwrap())
                .collect();
            assert_eq!(got.len(), r.found.len(), "{t}: duplicates");
            assert_eq!(got, expected.get(&t).cloned().unwrap_or_default(), "{t}");
        }
    }
}

#[test]
fn fixed_color_mode_matches_oracle() {
    let n = 6;
    let ms = perfect_matchings(n);
    let mut expected: BTreeMap<SeType, BTreeSet<Vec<u8>>> = BTreeMap::new();
    let eps = CyclicPermutation::identity(3);
    for a in &ms {
        for b in &ms {
            for c in &ms {
                let g = Gem::build(n, vec![a.clone(), b.clone(), c.clone()]).unwrap();
                if !g.is_connected() {
                    continue;
                }
                if let Some(t) = semi_equivelar_type(&g, &eps).unwrap() {
                    expected
                        .entry(t)
                        .or_default()
                        .insert(canonical_form(&g, ColorMode::Fixed).unwrap());
                }
            }
        }
    }
    for t in targets(n) {
        let mut q = SearchQuery::new(t.clone());
        q.color_mode = ColorMode::Fixed;
        let got: BTreeSet<Vec<u8>> = search(&q)
            .unwrap()
            .found
            .iter()
            .map(|g| canonical_form(g, ColorMode::Fixed).unwrap())
            .collect();
        assert_eq!(got, expected.get(&t).cloned().unwrap_or_default(), "{t}");
    }
}
