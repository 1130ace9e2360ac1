//! Seeded instance generation, parallel campaigns and counterexample refinement.
//!
//! Trial `i` of a campaign draws from its own ChaCha stream seeded with
//! `split_seed(master, i)`, so reports do not depend on scheduling or worker count.

mod campaign;
mod generate;
mod refine;

pub use campaign::{
    generate_instance, instance_for_trial, random_start, run_campaign, run_campaign_with_threads, thread_count,
    CampaignConfig, CampaignReport, Histogram, HistogramBin, Offender, TrialRecord, Verdict, MAX_DIM, THREADS_ENV,
    TOP_WORST,
};
pub use generate::{
    gen_family, gen_hermitian, gen_isometry, gen_map, gen_unit_vector, gen_unitary, split_seed, trial_rng, uniform,
    MapKind, MAX_CONDITION, MAX_RETRIES,
};
pub use refine::{refine_counterexample, Refinement};
