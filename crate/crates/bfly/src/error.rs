//! Crate-wide error type. Every validator reports the first violated axiom
//! together with the witnessing element indices, so a failure is always
//! reproducible by hand against the multiplication tables.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // group axioms
    #[error("table is not square or an entry is out of range at ({0}, {1})")]
    NotClosed(usize, usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),

    // homs, actions, subgroups
    #[error("map is not a homomorphism: map[{0}·{1}] ≠ map[{0}]·map[{1}]")]
    NotHomomorphism(usize, usize),
    #[error("map length {got} does not match source order {want}")]
    BadShape { got: usize, want: usize },
    #[error("action axiom violated at (g={0}, x={1})")]
    NotAnAction(usize, usize),
    #[error("subset is not a subgroup (witness element {0})")]
    NotSubgroup(usize),
    #[error("subgroup is not normal: conjugate of {member} by {by} escapes")]
    NotNormal { member: usize, by: usize },

    // searches
    #[error("search budget exceeded: {candidates} candidates > budget {budget}")]
    SearchBudgetExceeded { candidates: u128, budget: u128 },

    // crossed modules
    #[error("equivariance fails: ∂(g^x) ≠ x⁻¹∂(g)x at (g={0}, x={1})")]
    Equivariance(usize, usize),
    #[error("Peiffer identity fails at (g0={0}, g1={1})")]
    Peiffer(usize, usize),
    #[error("strict morphism square ∂∘f1 = f0∘∂ fails at h={0}")]
    SquareFails(usize),
    #[error("strict morphism equivariance fails at (h={0}, x={1})")]
    StrictEquivariance(usize, usize),
    #[error("homotopy relation {relation} fails at ({0}, {1})", relation = .2)]
    HomotopyFails(usize, usize, &'static str),

    // nerve / cocycles
    #[error("cocycle condition fails at cover indices ({0}, {1})")]
    CocycleEdge(usize, usize),
    #[error("cocycle composition fails at cover indices ({0}, {1}, {2})")]
    CocycleTriangle(usize, usize, usize),
    #[error("cocycle data does not match the cover size")]
    CoverMismatch,
    #[error("simplicial map data is not compatible with the faces at level {0}")]
    NotSimplicial(usize),

    // butterflies
    #[error("butterfly triangle {which} fails at element {witness}")]
    TriangleFails { which: &'static str, witness: usize },
    #[error("NE-SW diagonal is not an extension: {0}")]
    NotExtension(&'static str),
    #[error("NW-SE diagonal is not a complex: ȷ(κ(h)) ≠ 1 at h={0}")]
    NotComplex(usize),
    #[error("butterfly equivariance fails ({which}) at (e={e}, a={a})")]
    EquivarianceFails { which: &'static str, e: usize, a: usize },
    #[error("images of κ and ι do not commute at (h={0}, g={1})")]
    ImagesDontCommute(usize, usize),
    #[error("middle crossed modules differ")]
    MiddleMismatch,
    #[error("butterfly is not reversible")]
    NotReversible,
    #[error("map is not a homomorphic section of π")]
    NotASection,
    #[error("σ is not a set-section of π with σ(1) = 1")]
    SectionInvalid,
    #[error("exactness fails at term {term} (witness {witness})")]
    ExactnessFailure { term: &'static str, witness: usize },

    // functors
    #[error("additive functor invariant {which} fails at {0:?}", which = .1)]
    FunctorFails(Vec<usize>, &'static str),
    #[error("monoidal transformation invariant {which} fails at {0:?}", which = .1)]
    TransformationFails(Vec<usize>, &'static str),

    // braidings
    #[error("braiding condition {which} fails at {0:?}", which = .1)]
    BraidingFails(Vec<usize>, &'static str),
    #[error("multiplication-butterfly construction is inconsistent: {0}")]
    ConstructionInconsistent(String),

    // abelian specialization
    #[error("wing is not abelian: {0}")]
    WingNotAbelian(&'static str),
    #[error("shapes do not match: {0}")]
    ShapeMismatch(&'static str),
    #[error("cone homology comparison fails in degree {0}")]
    ComparisonFailure(i32),

    // oracle
    #[error("oracle mismatch: {0}")]
    Mismatch(String),

    // documents
    #[error("document error: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
