//! Canonical JSON: object keys sorted, floats written with 17 significant digits.

use std::io;

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter};
use serde_json::Value;

struct SeventeenDigits;

impl Formatter for SeventeenDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value == 0.0 {
            // keep the sign of negative zero out of goldens
            return writer.write_all(b"0.0000000000000000e0");
        }
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_string<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        CompactFormatter.begin_string(writer)
    }
}

/// Serializes `value` canonically, followed by a newline.
///
/// `serde_json::Map` is ordered by key, so sorting comes from the value model; this
/// only fixes the float spelling.
pub fn to_string(value: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SeventeenDigits);
    value
        .serialize(&mut ser)
        .expect("serializing a Value into memory cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_and_keys() {
        let v = json!({"b": 0.1, "a": [1, -2.5, 0.0, -0.0], "c": null});
        let s = to_string(&v);
        assert_eq!(
            s,
            "{\"a\":[1,-2.5000000000000000e0,0.0000000000000000e0,0.0000000000000000e0],\"b\":1.0000000000000001e-1,\"c\":null}\n"
        );
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(to_string(&back), s);
    }
}
