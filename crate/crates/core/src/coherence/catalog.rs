//! Descriptions of every check id emitted by the suites.

use crate::coherence::report::Family;
use crate::functors::Mutation;

/// One named check.
#[derive(Debug, Clone, Copy)]
pub struct CheckInfo {
    pub id: &'static str,
    /// Families that emit this id.
    pub families: &'static [Family],
    /// What the check compares.
    pub description: &'static str,
    /// A built-in mutation under which the check fails, if there is one.
    pub broken_by: Option<&'static str>,
}

use Family::*;

const fn info(
    id: &'static str,
    families: &'static [Family],
    broken_by: Option<&'static str>,
    description: &'static str,
) -> CheckInfo {
    CheckInfo {
        id,
        families,
        description,
        broken_by,
    }
}

const ASSOC: Option<&str> = Some("corrupt-associator");
const LAMBDA: Option<&str> = Some("misorder-lambda");
const CONJ: Option<&str> = Some("drop-conjugation");
const PHASE: Option<&str> = Some("phase-cocycle");

pub const CHECKS: &[CheckInfo] = &[
    info(
        "sqrt-roundtrip",
        &[Sqrt],
        None,
        "A conditional expectation is turned into its square root, a positive B-linear map L²B -> L²A, \
         and back. The weights must come back unchanged.",
    ),
    info(
        "sqrt-roundtrip-cone",
        &[Sqrt],
        None,
        "A positive B-linear map L²B -> L²A is turned into a conditional expectation and back. \
         The map must come back unchanged.",
    ),
    info(
        "ce-identity",
        &[Sqrt],
        None,
        "For the square root V of a conditional expectation E, the compression V* a V equals E(a) \
         for a random element a of A.",
    ),
    info(
        "ce-positivity",
        &[Sqrt],
        None,
        "A conditional expectation sends a positive element to a positive element.",
    ),
    info(
        "mu-independence",
        &[Sqrt],
        None,
        "The square root of a conditional expectation computed against two different faithful states \
         of B gives the same map.",
    ),
    info(
        "prop-lambda",
        &[Section3],
        None,
        "The map L²A ⊠_C L²B -> L²(A ∗_C B) that identifies the fusion of standard forms with the \
         standard form of the fibre product is unitary.",
    ),
    info(
        "prop-lambda-span",
        &[Section3],
        LAMBDA,
        "That identification sends the fused square roots of two conditional expectations, taken \
         relative to a state on C, to the square root of their product expectation.",
    ),
    info(
        "lemma-unitor",
        &[Section3],
        LAMBDA,
        "For a square with one identity leg, the fibre product identification followed by L² of the \
         canonical isomorphism equals the unitor of fusion.",
    ),
    info(
        "lemma-w-diagram",
        &[Section3],
        LAMBDA,
        "For algebras B1 <- A -> B2 -> B3, the identification for the outer square equals the \
         composite of the identifications for the two inner squares.",
    ),
    info(
        "lemma-sass",
        &[Section3],
        LAMBDA,
        "Fusing three standard forms and then identifying with the triple fibre product gives the \
         same map for both bracketings, through the fusion associator on one side and the fibre \
         product associator on the other.",
    ),
    info(
        "fibre-associator",
        &[Section3],
        None,
        "The canonical isomorphism between the two bracketings of a triple fibre product commutes \
         with the inclusions of the three factors.",
    ),
    info(
        "fibre-pentagon",
        &[Section3],
        None,
        "The five fibre product associators between the bracketings of a fourfold fibre product \
         form a commuting pentagon.",
    ),
    info(
        "fibre-triangle",
        &[Section3],
        None,
        "The fibre product associator is compatible with the unitors when the middle factor is the \
         base itself.",
    ),
    info(
        "fusion-pentagon",
        &[Section3],
        ASSOC,
        "The fusion associators between the bracketings of four modules form a commuting pentagon.",
    ),
    info(
        "fusion-triangle",
        &[Section3],
        ASSOC,
        "The fusion associator is compatible with the left and right unitors.",
    ),
    info(
        "fusion-inner-product",
        &[Section3],
        None,
        "The inner product of two elementary tensors in a fusion, computed through the algebra action, \
         matches the inner product of the corresponding Kronecker vectors.",
    ),
    info(
        "def2.3-item1",
        &[Projection],
        None,
        "Projection along an identity homomorphism reduces to the identitors of restriction and \
         induction.",
    ),
    info(
        "def2.3-item2",
        &[Projection],
        None,
        "Projection along a composite equals projection along each factor in turn, up to the \
         compositors.",
    ),
    info(
        "def2.3-item3",
        &[Projection],
        None,
        "Projection with the unit module in the second slot reduces to the fusion unitors.",
    ),
    info(
        "def2.3-item4",
        &[Projection],
        ASSOC,
        "Projection is compatible with the fusion associator: the two ways from (res M ⊠ N) ⊠ P to \
         res((M ⊠ ind N) ⊠ ind P) agree.",
    ),
    info(
        "projection-unitarity",
        &[Projection],
        None,
        "The projection isomorphism is unitary.",
    ),
    info(
        "projection-naturality",
        &[Projection],
        None,
        "The projection isomorphism is natural in both module arguments.",
    ),
    info(
        "def2.3-item5",
        &[BaseChange],
        LAMBDA,
        "Base change along a square whose restricted leg is an identity reduces to the identitor of \
         induction.",
    ),
    info(
        "def2.3-item6",
        &[BaseChange],
        LAMBDA,
        "Base change along a square whose induced leg is an identity reduces to the identitor of \
         restriction.",
    ),
    info(
        "def2.3-item7",
        &[BaseChange],
        LAMBDA,
        "Base change along two squares pasted side by side equals the composite of the two base \
         changes.",
    ),
    info(
        "def2.3-item8",
        &[BaseChange],
        LAMBDA,
        "Base change along two squares pasted one above the other equals the composite of the two \
         base changes.",
    ),
    info(
        "base-change-unitarity",
        &[BaseChange],
        LAMBDA,
        "The base change isomorphism is unitary.",
    ),
    info(
        "base-change-naturality",
        &[BaseChange],
        LAMBDA,
        "The base change isomorphism is natural in its module argument.",
    ),
    info(
        "def2.3-item9",
        &[Mixed],
        LAMBDA,
        "Projection followed by base change equals base change followed by projection along the \
         opposite leg of the square.",
    ),
    info(
        "def2.3-item10",
        &[Mixed],
        LAMBDA,
        "The two ways from res M ⊠ res N to the restriction of a fusion over the fibre product, one \
         per leg of the square, agree.",
    ),
    info(
        "lemma3.1-consistency",
        &[Projection, BaseChange, Mixed],
        ASSOC,
        "Each diagram passes at the standard form exactly when it passes at random modules.",
    ),
    info(
        "def2.6-phi-dual",
        &[Involutive],
        None,
        "The identification of a module with its double conjugate, conjugated and composed with the \
         identification for the conjugate module, is the identity.",
    ),
    info(
        "def2.6-phi-unit",
        &[Involutive],
        None,
        "The double-conjugate identification is compatible with the identification of the unit with \
         its conjugate.",
    ),
    info(
        "def2.6-phi-tensor",
        &[Involutive],
        None,
        "The double-conjugate identification is compatible with the identification of a conjugate \
         fusion with the fusion of conjugates.",
    ),
    info(
        "def2.6-xi-dual",
        &[Involutive],
        None,
        "Restriction commutes with conjugation compatibly with the double-conjugate identification.",
    ),
    info(
        "def2.6-zeta-dual",
        &[Involutive],
        None,
        "Induction commutes with conjugation compatibly with the double-conjugate identification.",
    ),
    info(
        "def2.6-zeta-unit",
        &[Involutive],
        None,
        "The commutation of induction with conjugation, at the unit module, matches the conjugated \
         unit isomorphism of induction.",
    ),
    info(
        "def2.6-zeta-tensor",
        &[Involutive],
        None,
        "The commutation of induction with conjugation is monoidal.",
    ),
    info(
        "def2.6-projection",
        &[Involutive],
        None,
        "Conjugating a projection isomorphism agrees with the projection isomorphism of the \
         conjugate modules, up to the commutation maps.",
    ),
    info(
        "def2.6-base-change",
        &[Involutive],
        LAMBDA,
        "Conjugating a base change isomorphism agrees with the base change isomorphism of the \
         conjugate module, up to the commutation maps.",
    ),
    info(
        "def2.7-dual-functor",
        &[Involutive],
        None,
        "Conjugation on maps is an involution and reverses the order of composition.",
    ),
    info(
        "dual-linear",
        &[Involutive],
        CONJ,
        "Conjugation on maps is complex linear, as the transpose is and the adjoint is not.",
    ),
    info("dagger-dual", &[Involutive], None, "Adjoint and conjugation commute."),
    info("antilinear", &[Involutive], None, "Taking adjoints is antilinear."),
    info(
        "dagger-involution",
        &[Involutive],
        None,
        "The adjoint of the adjoint is the original map.",
    ),
    info(
        "dagger-composition",
        &[Involutive],
        None,
        "The adjoint of a composite is the reversed composite of adjoints.",
    ),
    info("dagger-res", &[Involutive], None, "Restriction commutes with adjoints."),
    info("dagger-ind", &[Involutive], None, "Induction commutes with adjoints."),
    info(
        "dagger-fusion",
        &[Involutive],
        None,
        "Fusion of maps commutes with adjoints.",
    ),
    info(
        "unitarity",
        &[Involutive],
        LAMBDA,
        "Every structure isomorphism of the formalism (unitors, associator, symmetry, compositors, \
         projection, base change and the conjugation maps) is unitary.",
    ),
    info(
        "regular-cocycle",
        &[Fell],
        LAMBDA,
        "The regular representation, whose action is composed from the two base change \
         isomorphisms of the nerve, is multiplicative on composable pairs.",
    ),
    info(
        "regular-unitarity",
        &[Fell],
        LAMBDA,
        "The action of the regular representation is unitary and trivial at identity arrows.",
    ),
    info(
        "fell",
        &[Fell],
        PHASE,
        "The absorbing map u, from the trivial action on V tensored with the regular \
         representation to the given action on V tensored with the regular representation, \
         intertwines the two actions. u is projection, then the pushforward of the action along \
         the target map, then projection back.",
    ),
    info("fell-unitarity", &[Fell], LAMBDA, "The absorbing map u is unitary."),
    info(
        "fell-characters",
        &[Fell],
        LAMBDA,
        "At every loop, both tensor products with the regular representation have integral \
         characters equal to dim V times the number of arrows fixed by left multiplication.",
    ),
    info(
        "rank-decomposition",
        &[Fell],
        PHASE,
        "A representation whose rank varies between orbits splits into constant-rank pieces over \
         full subgroupoids that reassemble to the groupoid, and each piece is absorbed.",
    ),
];

pub fn lookup(id: &str) -> Option<&'static CheckInfo> {
    CHECKS.iter().find(|c| c.id == id)
}

/// The mutation that breaks `id`, for demonstrating that the check can fail.
pub fn mutation_for(id: &str) -> Option<Mutation> {
    lookup(id)?.broken_by?.parse().ok()
}
