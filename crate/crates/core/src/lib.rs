//! Graph-encoded manifolds: regular edge-colored graphs, their regular
//! embeddings on surfaces, semi-equivelar types, type enumeration, a catalog
//! of known examples and an exhaustive search.

pub mod canon;
pub mod catalog;
pub mod embedding;
pub mod enumerator;
pub mod error;
pub mod format;
pub mod gem;
pub mod search;
pub mod setype;
pub mod topology;

pub use canon::{canonical_form, isomorphic, ColorMode, Isomorphism};
pub use catalog::{
    default_catalog_dir, load_catalog, verify_catalog, verify_entry, CatalogEntry, CatalogError,
    VerificationReport,
};
pub use embedding::{
    all_regular_embeddings, regular_embedding, semi_equivelar_type, vertex_face_sequence,
    CyclicPermutation, EmbeddingReport, FaceClass,
};
pub use enumerator::{
    check_type, enumerate_types, gem_admissible_types, Admissibility, CandidateType, EnumError,
};
pub use error::{GemError, ParseError, ParseErrorKind};
pub use format::{parse_gem, write_gem, GemFile};
pub use gem::{Color, Gem, Residue};
pub use search::{search, SearchError, SearchQuery, SearchResult, SearchStats};
pub use setype::{SeType, TypeParseError};
pub use topology::{
    manifold_status, sphere_certify, surface_of, LinkWitness, ManifoldStatus, Surface,
};
