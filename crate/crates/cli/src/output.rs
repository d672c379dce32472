//! JSON with fixed 17-significant-digit floats, and CSV.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::{json, Value};
use shapeinv::{ExtensionSpec, FamilyParams, GridReport};

struct Digits17;

impl Formatter for Digits17 {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        write!(w, "{}", num(v))
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, v as f64)
    }
}

/// Compact JSON; floats always carry 17 significant digits.
pub fn to_json(v: &impl Serialize) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Digits17);
    v.serialize(&mut ser).expect("serializing to memory cannot fail");
    String::from_utf8(out).expect("serde_json writes UTF-8")
}

/// `{:.16e}`, with negative zero printed as zero.
pub fn num(v: f64) -> String {
    format!("{:.16e}", v + 0.0)
}

pub fn family_params(fp: &FamilyParams) -> Value {
    json!({
        "eps": fp.eps,
        "rho": fp.rho,
        "beta": fp.beta,
        "mean": fp.mean,
        "m": fp.provenance.p.values(),
    })
}

pub fn extension_params(s: &ExtensionSpec) -> Value {
    json!({
        "eps": s.eps,
        "rho": s.rho,
        "ell": s.ell,
        "m": s.provenance.p.values(),
    })
}

pub fn grid_report(r: &GridReport) -> Value {
    json!({
        "residual_max": r.max_residual,
        "residual_mean": r.mean_residual,
        "argmax_x": r.argmax_x,
        "points_used": r.points_used,
        "points_excluded": r.points_excluded,
        "grid": {"a": r.grid.a, "b": r.grid.b, "N": r.grid.n},
    })
}

/// CSV body with a header row, floats at 17 significant digits.
pub fn csv_rows(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory CSV");
    for row in rows {
        w.write_record(row.iter().map(|v| num(*v))).expect("in-memory CSV");
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV")).expect("CSV is UTF-8")
}
