//! Text and JSON input/output.

pub mod member;
pub mod parser;

pub use member::{load_member, member_from_json, MemberFile};
pub use parser::{parse, parse_in, parse_local_form, parse_rational, print, Aliases};

/// Version tag carried by every JSON report.
pub const SCHEMA: &str = "singzeta/1";

/// Wrap a payload as `{"schema": .., "command": .., "result": ..}` and render
/// it with stable key order.
pub fn report<T: serde::Serialize>(command: &str, result: &T) -> String {
    let v = serde_json::json!({
        "schema": SCHEMA,
        "command": command,
        "result": result,
    });
    serde_json::to_string_pretty(&v).expect("report values serialize") + "\n"
}
