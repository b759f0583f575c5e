//! The bundled catalog: named gems with declared properties, and end-to-end
//! verification of each entry.
//!
//! A catalog directory holds one text-format file per entry plus
//! `manifest.toml`, which records the declared type, Euler characteristic,
//! surface, manifold status, per-pair face counts and audit face words.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use crate::embedding::{regular_embedding, semi_equivelar_type, CyclicPermutation};
use crate::enumerator::check_type;
use crate::error::ParseError;
use crate::format::parse_gem;
use crate::gem::{Color, Gem};
use crate::setype::{normalize, SeType};
use crate::topology::{manifold_status, surface_of, ManifoldStatus, Surface};

/// The catalog shipped with this crate.
pub fn default_catalog_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog")
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("{file}: {error}")]
    Parse { file: String, error: ParseError },
}

#[derive(Debug, Deserialize)]
struct Manifest {
    entry: Vec<ManifestEntry>,
}

#[derive(Debug, Deserialize)]
struct ManifestEntry {
    name: String,
    file: String,
    #[serde(rename = "type")]
    declared_type: String,
    chi: i64,
    surface: Option<String>,
    status: String,
    #[serde(default)]
    faces: BTreeMap<String, usize>,
    #[serde(default)]
    notes: String,
    #[serde(default)]
    audit: Vec<AuditFace>,
}

/// A face word named in a construction: a vertex sequence expected to be a
/// `{colors}`-cycle.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct AuditFace {
    pub colors: [Color; 2],
    pub word: String,
}

/// The declared manifold status of an entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectedStatus {
    Manifold,
    NotManifold,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub gem: Gem,
    pub declared_type: SeType,
    pub declared_chi: i64,
    pub declared_surface: Option<Surface>,
    pub expected_status: ExpectedStatus,
    /// Declared number of faces per color pair.
    pub face_counts: Vec<((Color, Color), usize)>,
    pub audit: Vec<AuditFace>,
    pub transcription_notes: String,
}

fn parse_pair(key: &str) -> Option<(Color, Color)> {
    let (a, b) = key.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

fn entry_from_manifest(m: ManifestEntry, gem: Gem) -> Result<CatalogEntry, CatalogError> {
    let bad = |what: String| CatalogError::Manifest(format!("{}: {what}", m.name));
    let declared_type: SeType = m.declared_type.parse().map_err(|e| bad(format!("{e}")))?;
    let declared_surface = m
        .surface
        .as_deref()
        .map(str::parse::<Surface>)
        .transpose()
        .map_err(bad)?;
    let expected_status = match m.status.as_str() {
        "manifold" => ExpectedStatus::Manifold,
        "not-manifold" => ExpectedStatus::NotManifold,
        other => return Err(bad(format!("unknown status `{other}`"))),
    };
    let mut face_counts = Vec::new();
    for (k, &v) in &m.faces {
        let pair = parse_pair(k).ok_or_else(|| bad(format!("bad color pair `{k}`")))?;
        face_counts.push((pair, v));
    }
    face_counts.sort();
    Ok(CatalogEntry {
        name: m.name,
        gem,
        declared_type,
        declared_chi: m.chi,
        declared_surface,
        expected_status,
        face_counts,
        audit: m.audit,
        transcription_notes: m.notes,
    })
}

/// Loads every entry listed in `dir/manifest.toml`, in manifest order.
pub fn load_catalog(dir: &Path) -> Result<Vec<CatalogEntry>, CatalogError> {
    let read = |path: PathBuf| {
        std::fs::read_to_string(&path).map_err(|source| CatalogError::Io {
            path: path.clone(),
            source,
        })
    };
    let manifest: Manifest = toml::from_str(&read(dir.join("manifest.toml"))?)
        .map_err(|e| CatalogError::Manifest(e.to_string()))?;
    manifest
        .entry
        .into_iter()
        .map(|m| {
            let src = read(dir.join(&m.file))?;
            let gem = parse_gem(&src)
                .map_err(|error| CatalogError::Parse {
                    file: m.file.clone(),
                    error,
                })?
                .gem;
            entry_from_manifest(m, gem)
        })
        .collect()
}

/// One verification step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: &'static str,
    pub passed: bool,
    /// What was found, or why it failed.
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub name: String,
    pub checks: Vec<Check>,
    /// Faces per color pair, for the pairs `{0,1}, {1,2}, {0,2}` of a
    /// 3-colored entry, or the consecutive pairs of the matching class
    /// otherwise.
    pub face_inventory: Vec<((Color, Color), usize)>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{}: {} {} ({})",
                self.name,
                c.id,
                if c.passed { "ok" } else { "mismatch" },
                c.detail
            )?;
        }
        Ok(())
    }
}

fn word_is_face(gem: &Gem, face: &AuditFace) -> Result<bool, String> {
    let word: Vec<usize> = face
        .word
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| format!("bad vertex `{t}` in audit word"))
        })
        .collect::<Result<_, _>>()?;
    let [a, b] = face.colors;
    if a >= gem.color_count() || b >= gem.color_count() || a == b || word.is_empty() {
        return Ok(false);
    }
    let key = normalize(&word);
    Ok(gem
        .bicolored_cycles(a, b)
        .is_ok_and(|cs| cs.iter().any(|c| normalize(c) == key)))
}

struct Checker {
    checks: Vec<Check>,
}

impl Checker {
    fn push(&mut self, id: &'static str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            id,
            passed,
            detail: detail.into(),
        });
        passed
    }
}

/// Runs every check for one entry, in order; later checks still run after
/// a failure unless they depend on connectivity.
pub fn verify_entry(entry: &CatalogEntry) -> VerificationReport {
    let gem = &entry.gem;
    let mut ck = Checker { checks: Vec::new() };
    let mut inventory = Vec::new();
    let connected = gem.is_connected();
    let shape = format!(
        "{} vertices, {} colors",
        gem.n_vertices(),
        gem.color_count()
    );
    if !ck.push(
        "valid_connected",
        connected,
        if connected {
            shape
        } else {
            format!("{shape}, disconnected")
        },
    ) {
        return VerificationReport {
            name: entry.name.clone(),
            checks: ck.checks,
            face_inventory: inventory,
        };
    }
    let rank_ok = entry.declared_type.rank() == gem.color_count();
    ck.push(
        "rank",
        rank_ok,
        format!(
            "declared {}, graph has {}",
            entry.declared_type.rank(),
            gem.color_count()
        ),
    );

    // the classes whose embedding realizes the declared type and χ
    let classes = CyclicPermutation::all(gem.color_count());
    let mut matching = None;
    let mut found_types = Vec::new();
    for eps in &classes {
        let t = semi_equivelar_type(gem, eps).expect("connected, matching rank");
        let report = regular_embedding(gem, eps).expect("connected, matching rank");
        if let Some(t) = &t {
            found_types.push(t.to_string());
        }
        if t.as_ref() == Some(&entry.declared_type)
            && report.euler_characteristic == entry.declared_chi
        {
            matching = Some(report);
            break;
        }
    }
    let type_detail = match (&matching, classes.len()) {
        (Some(r), 1) => format!("{} ({} faces)", entry.declared_type, r.f_count),
        (Some(r), _) => format!(
            "{} with chi={} in class {}",
            entry.declared_type, entry.declared_chi, r.permutation
        ),
        (None, _) => {
            let found = if found_types.is_empty() {
                "none".to_string()
            } else {
                found_types.join(" ")
            };
            format!("declared {}, found {found}", entry.declared_type)
        }
    };
    ck.push("semi_equivelar_type", matching.is_some(), type_detail);

    if gem.color_count() == 3 {
        let chi = regular_embedding(gem, &classes[0])
            .expect("connected")
            .euler_characteristic;
        ck.push(
            "euler_characteristic",
            chi == entry.declared_chi,
            format!("chi={chi}, declared {}", entry.declared_chi),
        );
        let bip = gem.is_bipartite();
        let orientable_expected = entry.declared_surface.map_or(bip, |s| s.orientable);
        ck.push(
            "bipartite",
            bip == orientable_expected,
            format!(
                "bipartite={bip}, {}",
                if orientable_expected {
                    "orientable"
                } else {
                    "non-orientable"
                }
            ),
        );
        let surface = surface_of(gem).expect("3-colored and connected");
        if let Some(declared) = entry.declared_surface {
            ck.push(
                "surface",
                surface == declared,
                format!("{surface}, declared {declared}"),
            );
        }
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            inventory.push((
                (a, b),
                gem.bicolored_cycles(a, b).expect("distinct colors").len(),
            ));
        }
    } else if let Some(r) = &matching {
        inventory = r.faces.iter().map(|f| (f.colors, f.cycles.len())).collect();
    }

    if !entry.face_counts.is_empty() {
        let mut mismatches = Vec::new();
        for &((a, b), want) in &entry.face_counts {
            let got = gem.bicolored_cycles(a, b).map(|c| c.len()).unwrap_or(0);
            if got != want {
                mismatches.push(format!("{{{a},{b}}}: {got} found, {want} declared"));
            }
        }
        let summary: Vec<String> = entry
            .face_counts
            .iter()
            .map(|((a, b), k)| format!("{{{a},{b}}}:{k}"))
            .collect();
        let ok = mismatches.is_empty();
        ck.push(
            "face_counts",
            ok,
            if ok {
                summary.join(" ")
            } else {
                mismatches.join("; ")
            },
        );
    }
    if !entry.audit.is_empty() {
        let missing: Vec<String> = entry
            .audit
            .iter()
            .filter(|f| !word_is_face(gem, f).unwrap_or(false))
            .map(|f| format!("{{{},{}}} {}", f.colors[0], f.colors[1], f.word))
            .collect();
        let ok = missing.is_empty();
        ck.push(
            "audit_faces",
            ok,
            if ok {
                format!("{} named faces found", entry.audit.len())
            } else {
                format!("not faces: {}", missing.join("; "))
            },
        );
    }
    let identity_ok = check_type(&entry.declared_type, entry.declared_chi);
    ck.push(
        "type_identity",
        identity_ok,
        format!("{} on chi={}", entry.declared_type, entry.declared_chi),
    );

    let status = manifold_status(gem).expect("connected");
    let (ok, detail) = match (&status, entry.expected_status) {
        (ManifoldStatus::Manifold { .. }, ExpectedStatus::Manifold) => {
            (true, "manifold".to_string())
        }
        (ManifoldStatus::NotManifold(w), ExpectedStatus::NotManifold) => {
            let verified = w.verify(gem);
            (
                verified,
                format!(
                    "not a manifold: {w}{}",
                    if verified {
                        ""
                    } else {
                        " (witness does not re-verify)"
                    }
                ),
            )
        }
        (s, want) => (false, format!("{}, declared {:?}", s.label(), want)),
    };
    ck.push("manifold_status", ok, detail);

    VerificationReport {
        name: entry.name.clone(),
        checks: ck.checks,
        face_inventory: inventory,
    }
}

/// Verifies all entries in parallel; reports keep the input order.
pub fn verify_catalog(entries: &[CatalogEntry]) -> Vec<VerificationReport> {
    entries.par_iter().map(verify_entry).collect()
}
