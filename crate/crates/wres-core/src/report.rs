//! placeholder
pub struct AuditReport;
