//! Bimorphisms along laws between monads: left λ-morphisms, right
//! ρ-morphisms, bilinear maps, Kleisli and Eilenberg-Moore laws and the
//! liftings they induce.

mod family;
mod functor;
mod laws;
mod lifts;
mod predicates;

pub use family::{after_monad, before_monad, coproduct_law, dst_law, dst_prime_law, identity_law, monad_morphism_law, writer_inversion_law, NatFamily};
pub use functor::{test_tuples, FunctorHandle};
pub use laws::{check_naturality, em_law_inverse_is_kleisli, is_em_law, is_kleisli_law, nary_kleisli_law_check};
pub use lifts::{
    check_distributive_law_algebra, check_em_lift_functoriality, check_kleisli_functoriality, compose_bimorphisms, em_axioms_as_bimorphisms, em_axioms_direct,
    em_lift_law, extract_law, kleisli_compose_product, kleisli_lift, monad_axiom_bimorphisms, AxiomVerdicts, KleisliLifting, LeftMorphism,
};
pub use predicates::{
    bilinearity, em_lift, em_lift_morphism, is_bilinear, is_left_lambda_morphism, is_right_rho_morphism, left_component, right_component, Bilinearity,
};
