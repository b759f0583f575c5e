//! Acceptance criteria, one PASS/FAIL line each.
//!
//! A criterion listed in `KNOWN_DEVIATIONS` is still run and reported, but
//! its failure does not fail the target; any other failure does.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use gem_core::catalog::{default_catalog_dir, load_catalog, verify_entry, CatalogEntry};
use gem_core::search::{search, SearchQuery};
use gem_core::topology::{manifold_status, ManifoldStatus, Surface};
use gem_core::{
    canonical_form, isomorphic, regular_embedding, semi_equivelar_type, ColorMode,
    CyclicPermutation, Gem, SeType,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

/// The χ = −2 list omits [(4^6);4], which satisfies every condition and is
/// realized by three 4-vertex graphs.
const KNOWN_DEVIATIONS: &[u32] = &[3];

const CHI_MINUS_ONE: [&str; 15] = [
    "[(4^5);4]",
    "[(4^3,8);8]",
    "[(4^3,6);12]",
    "[(8^3);8]",
    "[(6^2,8);24]",
    "[(6^2,12);12]",
    "[(10^2,4);20]",
    "[(12^2,4);12]",
    "[(4,6,14);84]",
    "[(4,6,16);48]",
    "[(4,6,18);36]",
    "[(4,6,24);24]",
    "[(4,8,10);40]",
    "[(4,8,12);24]",
    "[(4,8,16);16]",
];

const CHI_MINUS_ONE_REMOVED: [&str; 3] = ["[(4^5);4]", "[(4^3,8);8]", "[(4^3,6);12]"];

/// Face cycles only; the list gives no vertex counts.
const CHI_MINUS_TWO: [&str; 31] = [
    "4^5", "6^4", "4^3,6", "4^3,8", "4^3,12", "4,6,4,6", "4^2,6^2", "4,8,4,8", "4^2,8^2", "8^3",
    "10^3", "6^2,8", "6^2,10", "6^2,12", "6^2,18", "10^2,4", "12^2,4", "16^2,4", "8^2,6", "12^2,6",
    "4,6,14", "4,6,16", "4,6,18", "4,6,20", "4,6,24", "4,6,36", "4,8,10", "4,8,12", "4,8,16",
    "4,8,24", "4,10,20",
];

/// Id, name, time limit, check.
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn gemtool(args: &[&str]) -> (i32, String, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_gemtool"))
        .env_remove("GEM_CATALOG")
        .args(args)
        .output()
        .unwrap();
    (
        o.status.code().unwrap_or(-1),
        String::from_utf8(o.stdout).unwrap(),
        String::from_utf8(o.stderr).unwrap(),
    )
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .unwrap()
}

fn record_field<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    line.split(' ')
        .find_map(|kv| kv.strip_prefix(key)?.strip_prefix('='))
}

fn record_types(out: &str) -> Vec<(SeType, usize)> {
    out.lines()
        .filter_map(|l| {
            let t = record_field(l, "type")?.parse().ok()?;
            let r = record_field(l, "rank")?.parse().ok()?;
            Some((t, r))
        })
        .collect()
}

fn parse_set(list: &[&str]) -> BTreeSet<SeType> {
    list.iter().map(|s| s.parse().unwrap()).collect()
}

fn show(set: &BTreeSet<SeType>) -> String {
    set.iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn set_diff(got: &BTreeSet<SeType>, want: &BTreeSet<SeType>) -> String {
    format!(
        "extra [{}], missing [{}]",
        show(&(got - want)),
        show(&(want - got))
    )
}

fn criterion_1() -> Outcome {
    let (code, out, _) = gemtool(&["--format", "records", "types", "--chi", "-1"]);
    let got: BTreeSet<SeType> = record_types(&out).into_iter().map(|(t, _)| t).collect();
    let want = parse_set(&CHI_MINUS_ONE);
    let golden_ok = out == golden("types_chi_-1.txt");
    outcome(
        code == 0 && golden_ok && got == want,
        format!(
            "{} types, golden {}; {}",
            got.len(),
            if golden_ok { "match" } else { "differs" },
            set_diff(&got, &want)
        ),
    )
}

fn criterion_2() -> Outcome {
    let (code, out, err) = gemtool(&["--format", "records", "types", "--chi", "-1", "--gems-only"]);
    let got: BTreeSet<SeType> = record_types(&out).into_iter().map(|(t, _)| t).collect();
    let removed: BTreeSet<SeType> = err
        .lines()
        .filter_map(|l| {
            record_field(l, "removed").or_else(|| l.strip_prefix("removed ")?.split(':').next())
        })
        .filter_map(|s| s.parse().ok())
        .collect();
    let want_removed = parse_set(&CHI_MINUS_ONE_REMOVED);
    let want = &parse_set(&CHI_MINUS_ONE) - &want_removed;
    let golden_ok = out == golden("types_chi_-1_gems_only.txt");
    outcome(
        code == 0 && golden_ok && got == want && removed == want_removed,
        format!(
            "{} kept ({}), removed {{{}}}",
            got.len(),
            set_diff(&got, &want),
            show(&removed)
        ),
    )
}

fn criterion_3() -> Outcome {
    let (code, out, _) = gemtool(&["--format", "records", "types", "--chi", "-2"]);
    let types = record_types(&out);
    let got: BTreeSet<Vec<usize>> = types.iter().map(|(t, _)| t.cycle().to_vec()).collect();
    // the list gives cycles only; attach any even p to normalize them
    let want: BTreeSet<Vec<usize>> = CHI_MINUS_TWO
        .iter()
        .map(|c| {
            format!("[({c});2]")
                .parse::<SeType>()
                .unwrap()
                .cycle()
                .to_vec()
        })
        .collect();
    let extra: Vec<String> = types
        .iter()
        .filter(|(t, _)| !want.contains(t.cycle()))
        .map(|(t, _)| t.to_string())
        .collect();
    let missing = want.difference(&got).count();
    let pairs_ok = ["4,6,4,6", "4^2,6^2", "4,8,4,8", "4^2,8^2"]
        .iter()
        .all(|c| got.contains(format!("[({c});2]").parse::<SeType>().unwrap().cycle()));
    let golden_ok = out == golden("types_chi_-2.txt");
    outcome(
        code == 0 && golden_ok && got == want && types.len() == 31,
        format!(
            "{} types vs 31 listed; extra [{}], missing {missing}; cyclic-order pairs {}",
            types.len(),
            extra.join(" "),
            if pairs_ok { "present" } else { "absent" }
        ),
    )
}

fn criterion_4() -> Outcome {
    let (c1, plain, _) = gemtool(&["--format", "records", "types", "--chi", "-1"]);
    let (c2, with, _) = gemtool(&[
        "--format",
        "records",
        "types",
        "--chi",
        "-1",
        "--allow-2-gons",
    ]);
    let rank3 = |out: &str| -> BTreeSet<SeType> {
        record_types(out)
            .into_iter()
            .filter(|&(_, r)| r == 3)
            .map(|(t, _)| t)
            .collect()
    };
    let (a, b) = (rank3(&plain), rank3(&with));
    let total = record_types(&with).len();
    outcome(
        c1 == 0 && c2 == 0 && a == b,
        format!(
            "rank 3: {} without, {} with 2-gons ({total} types in all with 2-gons)",
            a.len(),
            b.len()
        ),
    )
}

fn catalog() -> Vec<CatalogEntry> {
    load_catalog(&default_catalog_dir()).expect("catalog loads")
}

fn criterion_5() -> Outcome {
    let entries = catalog();
    let gems: Vec<&CatalogEntry> = entries.iter().filter(|e| e.name != "fig13").collect();
    let mut failures = Vec::new();
    for e in &gems {
        let r = verify_entry(e);
        let g = &e.gem;
        let f: usize = r.face_inventory.iter().map(|&(_, k)| k).sum();
        let chi = g.n_vertices() as i64 - (3 * g.n_vertices() / 2) as i64 + f as i64;
        let ok = r.passed()
            && g.is_connected()
            && !g.is_bipartite()
            && g.color_count() == 3
            && chi == -1
            && e.declared_surface == Surface::from_chi(-1, false)
            && manifold_status(g).map(|s| s.is_manifold()).unwrap_or(false);
        if !ok {
            failures.push(format!(
                "{} ({})",
                e.name,
                r.first_failure().map(|c| c.id).unwrap_or("chi/status")
            ));
        }
    }
    let fig2_f = gems.iter().find(|e| e.name == "fig2").map(|e| {
        verify_entry(e)
            .face_inventory
            .iter()
            .map(|&(_, k)| k)
            .sum::<usize>()
    });
    outcome(
        gems.len() == 12 && failures.is_empty() && fig2_f == Some(11),
        format!(
            "{} entries, failures [{}], fig2 F={}",
            gems.len(),
            failures.join(", "),
            fig2_f.unwrap_or(0)
        ),
    )
}

/// χ of a 3-colored graph's complex straight from its matchings.
fn residue_chi_by_hand(g: &Gem, colors: [usize; 3], start: usize) -> (usize, i64) {
    let mut comp = vec![start];
    let mut seen = vec![false; g.n_vertices() + 1];
    seen[start] = true;
    let mut i = 0;
    while i < comp.len() {
        for &c in &colors {
            let u = g.neighbor(c, comp[i]);
            if !seen[u] {
                seen[u] = true;
                comp.push(u);
            }
        }
        i += 1;
    }
    let v = comp.len() as i64;
    let mut faces = 0;
    for (a, b) in [
        (colors[0], colors[1]),
        (colors[1], colors[2]),
        (colors[0], colors[2]),
    ] {
        let mut done = vec![false; g.n_vertices() + 1];
        for &s in &comp {
            if done[s] {
                continue;
            }
            faces += 1;
            let (mut x, mut c) = (s, a);
            while !done[x] {
                done[x] = true;
                x = g.neighbor(c, x);
                c = if c == a { b } else { a };
            }
        }
    }
    (comp.len(), v - 3 * v / 2 + faces)
}

fn criterion_6() -> Outcome {
    let entries = catalog();
    let Some(e) = entries.iter().find(|e| e.name == "fig13") else {
        return outcome(false, "fig13 missing from catalog");
    };
    let g = &e.gem;
    let target: SeType = "[(4^5);4]".parse().unwrap();
    let classes = CyclicPermutation::all(g.color_count())
        .into_iter()
        .filter(|eps| {
            semi_equivelar_type(g, eps).ok().flatten().as_ref() == Some(&target)
                && regular_embedding(g, eps)
                    .map(|r| r.euler_characteristic == -1)
                    .unwrap_or(false)
        })
        .count();
    match manifold_status(g) {
        Ok(ManifoldStatus::NotManifold(w)) => {
            let cs = [w.colors[0], w.colors[1], w.colors[2]];
            let (size, chi) = residue_chi_by_hand(g, cs, w.vertices[0]);
            let oracle_ok = size == w.vertices.len() && chi == w.chi && chi != 2;
            outcome(
                classes > 0 && w.verify(g) && oracle_ok,
                format!("{classes} classes of type {target} with chi=-1; witness: {w}; oracle chi={chi}"),
            )
        }
        Ok(other) => outcome(false, format!("status {}", other.label())),
        Err(err) => outcome(false, err.to_string()),
    }
}

fn criterion_7() -> Outcome {
    let (code, out, _) = gemtool(&["search", "--type", "[(4^5);4]"]);
    let t: SeType = "[(4^5);4]".parse().unwrap();
    let r = match search(&SearchQuery::new(t)) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let not_gem = r
        .found
        .iter()
        .all(|g| !manifold_status(g).map(|s| s.is_manifold()).unwrap_or(true));
    outcome(
        code == 0
            && r.exhausted
            && r.found.len() == 1
            && not_gem
            && out.contains("# 1 graph(s), exhausted=true"),
        format!(
            "{} graph(s), exhausted={}, gem filter rejects all: {not_gem}",
            r.found.len(),
            r.exhausted
        ),
    )
}

fn criterion_8() -> Outcome {
    let entries = catalog();
    let mut parts = Vec::new();
    let mut ok = true;
    for s in [
        "[(8^3);8]",
        "[(12^2,4);12]",
        "[(6^2,12);12]",
        "[(4,8,16);16]",
    ] {
        let t: SeType = s.parse().unwrap();
        let Some(e) = entries.iter().find(|e| e.declared_type == t) else {
            ok = false;
            parts.push(format!("{s}: no catalog entry"));
            continue;
        };
        let mut q = SearchQuery::new(t);
        q.require_gem = true;
        q.require_surface = Surface::from_chi(-1, false);
        let start = Instant::now();
        match search(&q) {
            Ok(r) => {
                let hit = r
                    .found
                    .iter()
                    .any(|g| isomorphic(g, &e.gem, ColorMode::Permutable).is_some());
                ok &= r.exhausted && hit && start.elapsed() < Duration::from_secs(600);
                parts.push(format!(
                    "{s}: {} found, {} {}",
                    r.found.len(),
                    e.name,
                    if hit { "among them" } else { "absent" }
                ));
            }
            Err(err) => {
                ok = false;
                parts.push(format!("{s}: {err}"));
            }
        }
    }
    outcome(ok, parts.join("; "))
}

fn random_gem(rng: &mut StdRng, n: usize, k: usize) -> Gem {
    let pairs: Vec<Vec<(usize, usize)>> = (0..k)
        .map(|_| {
            let mut vs: Vec<usize> = (1..=n).collect();
            vs.shuffle(rng);
            vs.chunks(2).map(|p| (p[0], p[1])).collect()
        })
        .collect();
    Gem::from_pairs(n, &pairs).unwrap()
}

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

fn search_matches_oracle() -> Result<usize, String> {
    let eps = CyclicPermutation::identity(3);
    let mut checked = 0;
    for n in [2, 4, 6, 8] {
        let ms = perfect_matchings(n);
        let mut oracle: BTreeMap<SeType, BTreeSet<Vec<u8>>> = BTreeMap::new();
        for a in &ms {
            for b in &ms {
                for c in &ms {
                    let g = Gem::build(n, vec![a.clone(), b.clone(), c.clone()]).unwrap();
                    if !g.is_connected() {
                        continue;
                    }
                    if let Some(t) = semi_equivelar_type(&g, &eps).unwrap() {
                        oracle
                            .entry(t)
                            .or_default()
                            .insert(canonical_form(&g, ColorMode::Permutable).unwrap());
                    }
                }
            }
        }
        for (t, want) in oracle {
            let r = search(&SearchQuery::new(t.clone())).map_err(|e| format!("{t}: {e}"))?;
            let got: BTreeSet<Vec<u8>> = r
                .found
                .iter()
                .map(|g| canonical_form(g, ColorMode::Permutable).unwrap())
                .collect();
            if !r.exhausted || got != want || got.len() != r.found.len() {
                return Err(format!(
                    "{t}: {} found, oracle {}",
                    r.found.len(),
                    want.len()
                ));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

fn criterion_9() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut problems = Vec::new();
    let (mut detections, mut bipartite) = (0, 0);
    for i in 0..1000 {
        let n = 2 * (1 + i % 8);
        let k = 3 + i % 3;
        let g = random_gem(&mut rng, n, k);
        let partition_ok = (0..k)
            .all(|c| g.vertices().all(|v| g.neighbor(c, g.neighbor(c, v)) == v))
            && (0..k).all(|a| {
                (a + 1..k).all(|b| {
                    g.bicolored_cycles(a, b)
                        .unwrap()
                        .iter()
                        .map(Vec::len)
                        .sum::<usize>()
                        == n
                })
            });
        if !partition_ok {
            problems.push(format!("partition on gem {i}"));
        }
        if !g.is_connected() {
            continue;
        }
        for eps in CyclicPermutation::all(k) {
            let r = regular_embedding(&g, &eps).unwrap();
            if let Some(t) = semi_equivelar_type(&g, &eps).unwrap() {
                detections += 1;
                if !t.satisfies_identity(r.euler_characteristic) {
                    problems.push(format!("identity fails for {t}"));
                }
            }
            if g.is_bipartite() {
                bipartite += 1;
                if r.euler_characteristic % 2 != 0 {
                    problems.push(format!("odd chi on bipartite gem {i}"));
                }
            }
        }
    }
    for e in catalog() {
        let want = canonical_form(&e.gem, ColorMode::Permutable).unwrap();
        for _ in 0..100 {
            let mut perm: Vec<usize> = e.gem.vertices().collect();
            perm.shuffle(&mut rng);
            let mut colors: Vec<usize> = (0..e.gem.color_count()).collect();
            colors.shuffle(&mut rng);
            let h = e.gem.relabel(&perm).permute_colors(&colors);
            if canonical_form(&h, ColorMode::Permutable).unwrap() != want {
                problems.push(format!("canonical form of {} moved", e.name));
                break;
            }
        }
    }
    let searched = match search_matches_oracle() {
        Ok(k) => k,
        Err(e) => {
            problems.push(format!("search: {e}"));
            0
        }
    };
    outcome(
        problems.is_empty(),
        format!(
            "1000 random graphs, {detections} detections, {bipartite} bipartite classes, \
             {searched} search targets vs oracle; problems [{}]",
            problems.join(", ")
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            1,
            "type enumeration chi=-1",
            Duration::from_secs(1),
            criterion_1,
        ),
        (2, "gem filter chi=-1", Duration::from_secs(1), criterion_2),
        (
            3,
            "type enumeration chi=-2",
            Duration::from_secs(1),
            criterion_3,
        ),
        (
            4,
            "2-gon extension chi=-1",
            Duration::from_secs(1),
            criterion_4,
        ),
        (
            5,
            "catalog verification",
            Duration::from_secs(5),
            criterion_5,
        ),
        (
            6,
            "figure 13 non-manifold witness",
            Duration::from_secs(5),
            criterion_6,
        ),
        (
            7,
            "uniqueness search (4^5)",
            Duration::from_secs(30),
            criterion_7,
        ),
        (
            8,
            "existence searches",
            Duration::from_secs(2400),
            criterion_8,
        ),
        (9, "property suites", Duration::from_secs(600), criterion_9),
    ];
    let mut unexpected = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let passed = o.passed && elapsed <= limit;
        let known = KNOWN_DEVIATIONS.contains(&id);
        println!(
            "{} {id} {name} [{:.2}s / {}s]: {}{}",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs(),
            o.detail,
            if !passed && known {
                " (known deviation)"
            } else {
                ""
            }
        );
        if !passed && !known {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
