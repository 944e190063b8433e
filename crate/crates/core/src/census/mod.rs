//! Component census of the line and tadpole nilpotent cones.

mod chi;
mod kostant;
mod records;

pub use chi::{chi, chi_multipartition, peak_quiver, CacheError, ChiError, ChiTable};
pub use kostant::{kostant, multisegments};
pub use records::{
    census_an, census_tn_strata, small_loop_census, top_stratum_components, AnCensus,
    CensusError, CensusRecord, ComponentCount, ComponentDim, PsiEntry, PsiOracle, TopStratum,
};
