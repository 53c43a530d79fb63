//! File formats, report documents, verification campaigns and the command
//! line for [`prefent_core`].

pub mod campaign;
pub mod cli;
pub mod format;
pub mod report;

pub use campaign::{run_campaign, CampaignResult, CampaignSpec, Claim, Counterexample};
pub use format::{parse_model, FormatError, ModelFile};
pub use report::KvDoc;
