use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use gnx_core::spectral::Field;
use gnx_core::Real;
use serde::Serialize;

use crate::error::CliError;

pub const SCHEMA: &str = "gnx-1";

/// Every JSON document carries the schema tag and the command name first.
#[derive(Serialize)]
pub struct Envelope<'a, B: Serialize> {
    pub schema: &'static str,
    pub command: &'a str,
    #[serde(flatten)]
    pub body: B,
}

pub fn to_json<B: Serialize>(command: &str, body: B) -> String {
    let env = Envelope {
        schema: SCHEMA,
        command,
        body,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("reports serialize");
    s.push('\n');
    s
}

pub fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

/// `x,re,im,abs` for d = 1; for d > 1 one cut per axis through the origin
/// cell, prefixed by the axis index.
pub fn profile_csv<T: Real>(f: &Field<T>) -> String {
    let f = f.to_physical();
    let grid = *f.grid();
    let d = grid.dim();
    let n = grid.n();
    let mut out = String::new();
    if d == 1 {
        out.push_str("x,re,im,abs\n");
    } else {
        out.push_str("axis,x,re,im,abs\n");
    }
    for axis in 0..d {
        for j in 0..n {
            let mut m = [n / 2; 3];
            m[axis] = j;
            let v = f.values()[grid.ravel(&m[..d])];
            let x = grid.coordinate(axis, j);
            let (re, im, abs) = (v.re.as_f64(), v.im.as_f64(), v.norm().as_f64());
            if d == 1 {
                let _ = writeln!(out, "{x},{re},{im},{abs}");
            } else {
                let _ = writeln!(out, "{axis},{x},{re},{im},{abs}");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use gnx_core::Grid;

    #[test]
    fn csv_layout() {
        let g = Grid::new(2, 8, 8.0).unwrap();
        let f: Field<f64> = Field::from_real_fn(g, |x| x[0] + 10.0 * x[1]);
        let csv = profile_csv(&f);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "axis,x,re,im,abs");
        assert_eq!(lines.len(), 1 + 2 * 8);
        assert_eq!(lines[1], "0,-4,-4,0,4");
        assert_eq!(lines[9], "1,-4,-40,0,40");
        assert!(csv.ends_with('\n') && !csv.contains('\r'));
    }

    #[test]
    fn envelope_order() {
        #[derive(Serialize)]
        struct B {
            x: u8,
        }
        let s = to_json("demo", B { x: 1 });
        assert!(s.starts_with("{\n  \"schema\": \"gnx-1\",\n  \"command\": \"demo\""));
    }
}
