//! Finite matrix groups over `Z/N`: subgroup closure, the determinant-restricted
//! groups `Γ_n`, characteristic-polynomial statistics and Frobenius surveys.

mod gamma;
mod lemmas;
mod matrix;
mod survey;

pub use gamma::{
    gamma_charpoly_distribution, gamma_order_bruteforce, gamma_spec, sl2_order, unit_order, CharpolyDistribution,
    GammaSpec, MAX_CHARPOLY_ELL,
};
pub use lemmas::{
    check_commutator_lemma, check_unipotent_lemma, congruence_kernel, kernel_generators, psl2_simplicity,
    CommutatorLemmaReport, SimplicityReport, UnipotentLemmaReport, MAX_SIMPLICITY_ELL,
};
pub use matrix::{bfs_subgroup, gl2_elements, mod_inverse, MatrixModN, Subgroup, DEFAULT_BFS_CAP};
pub use survey::{
    collect_frobenius, frobenius_survey, isotriviality_contrast, summarize, FrobeniusSurvey, IsotrivialContrast,
    DEFAULT_SURVEY_BUDGET, MAX_SURVEY_DEGREE, TV_MIN_SAMPLES, TV_THRESHOLD,
};
