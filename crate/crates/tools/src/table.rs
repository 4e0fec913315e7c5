//! Table files: one `<expr> => <expr>` entry per line. Blank lines and
//! lines starting with `#` are ignored.

use std::fmt::Write;

use endw::endaut::standard_probe_keys;
use endw::{CanonicalQuasiInner, Context, OracleTable};

use crate::error::ToolError;
use crate::parse::parse_expression;

pub fn parse_table(ctx: &Context, path: &str, text: &str) -> Result<OracleTable, ToolError> {
    let mut table = OracleTable::new(*ctx);
    for (n, line) in text.lines().enumerate() {
        let line_no = n + 1;
        let err = |message: String| ToolError::Table { path: path.to_string(), line: line_no, message };
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let Some(arrow) = line.find("=>") else {
            return Err(err("expected `<expr> => <expr>`".into()));
        };
        let key = parse_expression(ctx, &line[..arrow]).map_err(|e| err(format!("key {e}")))?;
        let value = parse_expression(ctx, &line[arrow + 2..]).map_err(|e| err(format!("value {e}")))?;
        table.insert(key, value).map_err(|e| err(e.to_string()))?;
    }
    Ok(table)
}

pub fn write_table(table: &OracleTable) -> String {
    let mut out = String::new();
    for (k, v) in table.entries() {
        writeln!(out, "{k} => {v}").expect("writing to a string");
    }
    out
}

/// The table of `mu` on the standard probe keys.
pub fn table_of(mu: &CanonicalQuasiInner) -> endw::Result<OracleTable> {
    let ctx = *mu.context();
    OracleTable::from_fn(ctx, standard_probe_keys(&ctx), |k| mu.apply(k))
}
