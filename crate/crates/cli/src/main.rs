use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gem_core::catalog::{default_catalog_dir, load_catalog, verify_catalog, ExpectedStatus};
use gem_core::enumerator::{enumerate_types, gem_admissible_types, CandidateType};
use gem_core::search::{search, SearchError, SearchQuery, SearchResult, DEFAULT_MAX_NODES};
use gem_core::topology::{manifold_status, surface_of, ManifoldStatus, Surface};
use gem_core::{
    all_regular_embeddings, isomorphic, parse_gem, regular_embedding, semi_equivelar_type,
    write_gem, ColorMode, CyclicPermutation, EmbeddingReport, Gem, GemFile, SeType,
};

/// `println!` that exits quietly when stdout is closed.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        if let Err(e) = writeln!(std::io::stdout().lock(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("failed printing to stdout: {e}");
        }
    }};
}

#[derive(Parser)]
#[command(
    name = "gemtool",
    version,
    about = "Analyze, enumerate and search graph-encoded manifolds"
)]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file parses into a valid colored graph.
    Validate { file: PathBuf },
    /// Report embeddings, type, surface and manifold status of a gem file.
    Analyze {
        file: PathBuf,
        /// Report every cyclic color order, not just the identity.
        #[arg(long)]
        all_embeddings: bool,
    },
    /// List candidate semi-equivelar types for a surface of characteristic chi < 0.
    Types {
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
        /// Apply the orientability obstructions for gems.
        #[arg(long)]
        gems_only: bool,
        /// Allow faces of length 2.
        #[arg(long = "allow-2-gons")]
        allow_two_gons: bool,
    },
    /// Work with the bundled catalog (directory from GEM_CATALOG).
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Enumerate all graphs of a type up to isomorphism.
    Search {
        #[arg(long = "type")]
        target: String,
        /// Keep only gems of manifolds.
        #[arg(long)]
        gems_only: bool,
        /// Keep only graphs representing this surface (S2, S_g, RP2, #kRP2).
        #[arg(long)]
        surface: Option<String>,
        /// Node budget.
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        budget: u64,
        /// Search beyond the vertex-count feasibility bound.
        #[arg(long)]
        force: bool,
        /// Count graphs up to vertex relabeling only.
        #[arg(long)]
        fix_colors: bool,
    },
    /// Test two gem files for isomorphism.
    Iso {
        file1: PathBuf,
        file2: PathBuf,
        /// Do not allow color permutations.
        #[arg(long)]
        fix_colors: bool,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Verify catalog entries against their declared properties.
    Verify {
        #[arg(long)]
        entry: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Validate { file } => cmd_validate(&file, cli.format),
        Command::Analyze {
            file,
            all_embeddings,
        } => cmd_analyze(&file, all_embeddings, cli.format),
        Command::Types {
            chi,
            gems_only,
            allow_two_gons,
        } => cmd_types(chi, gems_only, allow_two_gons, cli.format),
        Command::Catalog {
            action: CatalogAction::Verify { entry },
        } => cmd_catalog_verify(entry.as_deref(), cli.format),
        Command::Search {
            target,
            gems_only,
            surface,
            budget,
            force,
            fix_colors,
        } => cmd_search(
            &target,
            gems_only,
            surface.as_deref(),
            budget,
            force,
            fix_colors,
            cli.format,
        ),
        Command::Iso {
            file1,
            file2,
            fix_colors,
        } => cmd_iso(&file1, &file2, fix_colors, cli.format),
    };
    ExitCode::from(code)
}

enum LoadError {
    Io(String),
    Parse(String),
}

fn load(path: &Path) -> Result<GemFile, LoadError> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| LoadError::Io(format!("{}: {e}", path.display())))?;
    parse_gem(&src).map_err(|e| {
        LoadError::Parse(format!(
            "{}:{}:{}: {}",
            path.display(),
            e.line,
            e.column,
            e.kind
        ))
    })
}

fn load_or_exit(path: &Path) -> Result<GemFile, u8> {
    load(path).map_err(|e| match e {
        LoadError::Io(m) => {
            eprintln!("error: {m}");
            2
        }
        LoadError::Parse(m) => {
            eprintln!("error: {m}");
            1
        }
    })
}

fn cmd_validate(file: &Path, format: Format) -> u8 {
    let f = match load_or_exit(file) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let (n, k, conn) = (
        f.gem.n_vertices(),
        f.gem.color_count(),
        f.gem.is_connected(),
    );
    match format {
        Format::Human => out!(
            "ok: {} ({n} vertices, {k} colors, {})",
            f.name,
            if conn { "connected" } else { "disconnected" }
        ),
        Format::Records => out!(
            "record=validate name={} valid=true vertices={n} colors={k} connected={conn}",
            f.name
        ),
    }
    0
}

fn face_summary(r: &EmbeddingReport) -> String {
    r.faces
        .iter()
        .map(|f| format!("{{{},{}}}:{}", f.colors.0, f.colors.1, f.cycles.len()))
        .collect::<Vec<_>>()
        .join(" ")
}

fn face_record(r: &EmbeddingReport) -> String {
    r.faces
        .iter()
        .map(|f| format!("{}-{}:{}", f.colors.0, f.colors.1, f.cycles.len()))
        .collect::<Vec<_>>()
        .join(",")
}

fn status_text(s: &ManifoldStatus) -> String {
    match s {
        ManifoldStatus::Manifold { .. } => "manifold".into(),
        ManifoldStatus::NotManifold(w) => format!("NOT a manifold ({w})"),
        ManifoldStatus::Unknown { .. } => "manifold status unknown".into(),
    }
}

fn status_record(s: &ManifoldStatus) -> String {
    match s {
        ManifoldStatus::NotManifold(w) => format!(
            "status=not-manifold witness_link={} witness_colors={} witness_vertices={} witness_chi={}",
            w.link_color,
            join(&w.colors),
            join(&w.vertices),
            w.chi
        ),
        other => format!("status={}", other.label()),
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_analyze(file: &Path, all: bool, format: Format) -> u8 {
    let f = match load_or_exit(file) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let g = &f.gem;
    let (n, k) = (g.n_vertices(), g.color_count());
    if !g.is_connected() {
        eprintln!(
            "error: {}: Disconnected: {} components",
            f.name,
            g.components().len()
        );
        return 1;
    }
    let bip = g.is_bipartite();
    let reports = if all {
        all_regular_embeddings(g).expect("connected")
    } else {
        vec![regular_embedding(g, &CyclicPermutation::identity(k)).expect("connected")]
    };
    match format {
        Format::Human => out!(
            "gem {}: {n} vertices, {k} colors, connected, {}",
            f.name,
            if bip { "bipartite" } else { "non-bipartite" }
        ),
        Format::Records => out!(
            "record=gem name={} vertices={n} colors={k} connected=true bipartite={bip}",
            f.name
        ),
    }
    for r in &reports {
        let t = semi_equivelar_type(g, &r.permutation).expect("connected");
        let ts = t.as_ref().map_or("none".to_string(), |t| t.to_string());
        match format {
            Format::Human => out!(
                "class {}: faces {}; V={} E={} F={} chi={}; {}; type {ts}",
                r.permutation,
                face_summary(r),
                r.v_count,
                r.e_count,
                r.f_count,
                r.euler_characteristic,
                if r.orientable {
                    "orientable"
                } else {
                    "non-orientable"
                }
            ),
            Format::Records => out!(
                "record=embedding class={} faces={} v={} e={} f={} chi={} orientable={} type={ts}",
                r.permutation,
                face_record(r),
                r.v_count,
                r.e_count,
                r.f_count,
                r.euler_characteristic,
                r.orientable
            ),
        }
    }
    // first semi-equivelar class overall, for the summary line
    let typed = CyclicPermutation::all(k).into_iter().find_map(|eps| {
        semi_equivelar_type(g, &eps).expect("connected").map(|t| {
            let chi = regular_embedding(g, &eps)
                .expect("connected")
                .euler_characteristic;
            (t, chi)
        })
    });
    let chi = reports[0].euler_characteristic;
    let surface = (k == 3).then(|| surface_of(g).expect("3 colors, connected"));
    let status = manifold_status(g).expect("connected");
    match format {
        Format::Human => {
            let mut parts = Vec::new();
            match &typed {
                Some((t, tchi)) if k > 3 => {
                    parts.push(format!("type {t} (some class), chi={tchi}"))
                }
                Some((t, _)) => parts.push(format!("type {t}, chi={chi}")),
                None => parts.push(format!("no semi-equivelar class, chi={chi}")),
            }
            if let Some(s) = surface {
                parts.push(format!("surface {s}"));
            }
            parts.push(status_text(&status));
            out!("{}", parts.join(", "));
        }
        Format::Records => {
            let (ts, tchi) = typed
                .as_ref()
                .map_or(("none".to_string(), chi), |(t, c)| (t.to_string(), *c));
            let surf = surface.map_or(String::new(), |s| format!(" surface={s}"));
            out!(
                "record=summary type={ts} chi={tchi}{surf} {}",
                status_record(&status)
            );
        }
    }
    0
}

fn print_type(t: &SeType, c: &CandidateType, note: Option<&str>, format: Format) {
    match format {
        Format::Human => match note {
            Some(n) => out!("{t}  ({n})"),
            None => out!("{t}"),
        },
        Format::Records => {
            let gem = note.map_or(String::new(), |n| format!(" gem={n}"));
            out!(
                "type={t} rank={} p={} faces={}{gem}",
                c.rank(),
                c.p,
                join(&c.faces())
            );
        }
    }
}

fn cmd_types(chi: i64, gems_only: bool, allow_two_gons: bool, format: Format) -> u8 {
    if gems_only {
        let report = match gem_admissible_types(chi) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {e}");
                return 1;
            }
        };
        let mut count = 0;
        for c in &report.admissible {
            for t in &c.cyclic_expansions {
                print_type(
                    t,
                    c,
                    (format == Format::Records).then_some("admissible"),
                    format,
                );
                count += 1;
            }
        }
        for c in &report.not_excluded {
            for t in &c.cyclic_expansions {
                print_type(t, c, Some("not-excluded"), format);
                count += 1;
            }
        }
        for c in &report.removed {
            for t in &c.cyclic_expansions {
                eprintln!(
                    "removed {t}: rank {} gems embed only on even-genus non-orientable surfaces",
                    c.rank()
                );
            }
        }
        eprintln!("{count} types");
    } else {
        let all = match enumerate_types(chi, allow_two_gons) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {e}");
                return 1;
            }
        };
        let mut count = 0;
        for c in &all {
            for t in &c.cyclic_expansions {
                print_type(t, c, None, format);
                count += 1;
            }
        }
        eprintln!("{count} types");
    }
    0
}

fn catalog_dir() -> PathBuf {
    std::env::var_os("GEM_CATALOG")
        .map(PathBuf::from)
        .unwrap_or_else(default_catalog_dir)
}

fn cmd_catalog_verify(entry: Option<&str>, format: Format) -> u8 {
    let dir = catalog_dir();
    let entries = match load_catalog(&dir) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {}: {e}", dir.display());
            return 2;
        }
    };
    let selected: Vec<_> = entries
        .into_iter()
        .filter(|e| entry.is_none_or(|n| e.name == n))
        .collect();
    if selected.is_empty() {
        eprintln!("error: no catalog entry named `{}`", entry.unwrap_or(""));
        return 1;
    }
    let reports = verify_catalog(&selected);
    let mut failed = false;
    for (e, r) in selected.iter().zip(&reports) {
        match format {
            Format::Human => {
                let faces: Vec<String> = r
                    .face_inventory
                    .iter()
                    .map(|((a, b), k)| format!("{{{a},{b}}}:{k}"))
                    .collect();
                out!(
                    "{:<6} {:<16} chi={:<3} {:<6} {:<13} faces {:<28} {}",
                    r.name,
                    e.declared_type.to_string(),
                    e.declared_chi,
                    e.declared_surface
                        .map_or("-".to_string(), |s| s.to_string()),
                    match e.expected_status {
                        ExpectedStatus::Manifold => "manifold",
                        ExpectedStatus::NotManifold => "not-manifold",
                    },
                    faces.join(" "),
                    if r.passed() { "PASS" } else { "FAIL" }
                );
                for c in r.checks.iter().filter(|c| !c.passed) {
                    out!("  {}: {} mismatch ({})", r.name, c.id, c.detail);
                }
            }
            Format::Records => {
                for c in &r.checks {
                    out!(
                        "entry={} check={} passed={} detail={:?}",
                        r.name,
                        c.id,
                        c.passed,
                        c.detail
                    );
                }
            }
        }
        if let Some(c) = r.first_failure() {
            eprintln!("{}: {} mismatch", r.name, c.id);
            failed = true;
        }
    }
    u8::from(failed)
}

fn print_search(result: &SearchResult, format: Format) {
    for (i, g) in result.found.iter().enumerate() {
        let status = manifold_status(g).expect("search results are connected");
        let note = match &status {
            ManifoldStatus::Manifold { .. } => "gem".to_string(),
            ManifoldStatus::NotManifold(w) => format!("not a gem: {w}"),
            ManifoldStatus::Unknown { .. } => "gem status unknown".to_string(),
        };
        let surface = (g.color_count() == 3).then(|| surface_of(g).expect("3 colors"));
        match format {
            Format::Human => {
                let s = surface.map_or(String::new(), |s| format!(", surface {s}"));
                out!("# graph {} ({note}{s})", i + 1);
                out!(
                    "{}",
                    write_gem(&format!("found{}", i + 1), g).trim_end_matches('\n')
                );
            }
            Format::Records => {
                let colors: Vec<String> = (0..g.color_count())
                    .map(|c| {
                        let pairs: Vec<String> = g
                            .color_pairs(c)
                            .iter()
                            .map(|(a, b)| format!("{a}-{b}"))
                            .collect();
                        format!("color{c}={}", pairs.join(","))
                    })
                    .collect();
                let s = surface.map_or(String::new(), |s| format!(" surface={s}"));
                out!(
                    "record=graph index={} vertices={} colors={}{s} {} {}",
                    i + 1,
                    g.n_vertices(),
                    g.color_count(),
                    status_record(&status),
                    colors.join(" ")
                );
            }
        }
    }
    let st = &result.stats;
    match format {
        Format::Human => out!(
            "# {} graph(s), exhausted={}, nodes={}, leaves={}, pruned: cycle-length={} path-length={} disconnected={}, duplicates={}, filtered: not-gem={} surface={}",
            result.found.len(),
            result.exhausted,
            st.nodes,
            st.leaves,
            st.pruned_cycle_length,
            st.pruned_path_length,
            st.pruned_disconnected,
            st.duplicates,
            st.filtered_not_gem,
            st.filtered_surface
        ),
        Format::Records => out!(
            "record=search found={} exhausted={} nodes={} leaves={} pruned_cycle_length={} pruned_path_length={} pruned_disconnected={} duplicates={} filtered_not_gem={} filtered_surface={}",
            result.found.len(),
            result.exhausted,
            st.nodes,
            st.leaves,
            st.pruned_cycle_length,
            st.pruned_path_length,
            st.pruned_disconnected,
            st.duplicates,
            st.filtered_not_gem,
            st.filtered_surface
        ),
    }
}

fn cmd_search(
    target: &str,
    gems_only: bool,
    surface: Option<&str>,
    budget: u64,
    force: bool,
    fix_colors: bool,
    format: Format,
) -> u8 {
    let target: SeType = match target.parse() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let surface = match surface.map(str::parse::<Surface>).transpose() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let mut q = SearchQuery::new(target);
    q.require_gem = gems_only;
    q.require_surface = surface;
    q.max_nodes = budget;
    q.force = force;
    q.color_mode = if fix_colors {
        ColorMode::Fixed
    } else {
        ColorMode::Permutable
    };
    match search(&q) {
        Ok(r) => {
            print_search(&r, format);
            0
        }
        Err(SearchError::BudgetExceeded(partial)) => {
            print_search(&partial, format);
            eprintln!("warning: node budget {budget} exhausted; the list above may be incomplete");
            3
        }
        Err(e @ SearchError::VertexBoundExceeded { .. }) => {
            eprintln!("warning: {e}");
            3
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn cmd_iso(a: &Path, b: &Path, fix_colors: bool, format: Format) -> u8 {
    let (g1, g2): (Gem, Gem) = match (load_or_exit(a), load_or_exit(b)) {
        (Ok(x), Ok(y)) => (x.gem, y.gem),
        _ => return 2,
    };
    let mode = if fix_colors {
        ColorMode::Fixed
    } else {
        ColorMode::Permutable
    };
    match isomorphic(&g1, &g2, mode) {
        Some(iso) => {
            match format {
                Format::Human => {
                    out!("isomorphic");
                    out!("vertex map: {}", join(&iso.vertex_map));
                    out!("color map: {}", join(&iso.color_map));
                }
                Format::Records => out!(
                    "record=iso isomorphic=true vertex_map={} color_map={}",
                    join(&iso.vertex_map),
                    join(&iso.color_map)
                ),
            }
            0
        }
        None => {
            match format {
                Format::Human => out!("not isomorphic"),
                Format::Records => out!("record=iso isomorphic=false"),
            }
            1
        }
    }
}
