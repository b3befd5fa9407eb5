//! Ideal membership, one-dimensional cover certificates, non-semisimplicity
//! witnesses and the resulting verdicts.

mod along;
mod cover;
mod ideal;
mod verdict;
mod witness;

pub use along::{first_excess, is_limit, leq_on_set, zero_inclusion_violation, SetCheck};
pub use ideal::{
    ideal_membership, scan_bound, DominanceRow, DominanceTable, IdealMembership, DEFAULT_CAP,
};
pub use witness::{
    not_sss_witness, verify_fact_chain, Fact, FactCheck, FactReport, NotSssWitness, Status,
    DEFAULT_KMAX,
};
pub use verdict::{
    decide_sss, decide_sss_dim1, decide_sss_dim2, DecisionConfig, SssReason, SssVerdict,
};
pub use cover::{cover_certificate_1d, hull_1d, CaseTag, CoverCertificate1D, CoverEntry, Interval};
