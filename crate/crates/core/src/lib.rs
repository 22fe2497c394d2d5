//! Birational calculus of weighted graphs: the dual graphs of boundary
//! divisors of completions of affine surfaces.
//!
//! Graphs are rewritten by blowups and blowdowns; the crate computes exact
//! quadratic-form invariants, minimal models, relatively minimal diagrams,
//! and decides admissibility, rigidity, uniqueness of minimal models and
//! triangulability of circular graphs.

pub mod diagram;
pub mod error;
pub mod graph;
pub mod ids;
pub mod iso;
pub mod minimality;
pub mod moves;
pub mod notation;
pub mod quad;
pub mod rigidity;
pub mod search;
pub mod segments;
pub mod standard;
pub mod testgen;
pub mod triangulation;
pub mod validate;

pub use diagram::{
    check_graph_lemma, dominate, relatively_minimize, Diagram, GraphLemmaReport, Link,
};
pub use error::{Error, Result};
pub use graph::{Subgraph, Vertex, WeightedGraph};
pub use ids::{EdgeId, VertexId};
pub use iso::{are_isomorphic, canonical_key};
pub use minimality::{
    complete_square, is_contractible, is_contractible_numeric, minimal_model, Policy, Site,
};
pub use moves::{
    apply, are_equivalent_morphisms, blowdown, elementary_transformation, inner_blowup, invert,
    outer_blowup, preimage_subgraph, restrict_preserving, BirationalSequence, Contraction, Move,
    Recorder, Through, Undo,
};
pub use notation::{format, parse};
pub use quad::{
    discriminant, inertia, intersection_matrix, is_negative_definite, Inertia, IntersectionMatrix,
};
pub use rigidity::{
    a1_witness, enumerate_minimal_models, has_unique_minimal_model, has_zero_tip,
    is_admissible_mod_earrings, is_birationally_rigid, is_surface_rigid, Budget, Enumeration,
    ModelClass, RigidityVerdict, Witness,
};
pub use segments::{branches_at, segments, Position, SegmentReport, Shape};
pub use standard::{standard_form, StandardForm};
pub use triangulation::{triangulate_circular, Triangulation};
pub use validate::{validate, ValidateOptions};
