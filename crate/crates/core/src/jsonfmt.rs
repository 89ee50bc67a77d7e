//! JSON rendering with round-trip-exact floats.
//!
//! Every finite `f64` is written in scientific notation with 17 significant
//! digits, which is enough to reproduce the bit pattern exactly on parse.
//! Output is byte-deterministic: struct fields serialize in declaration
//! order and nothing depends on hash iteration.

use std::io;

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter, Serializer};

struct SciFloatFormatter;

impl Formatter for SciFloatFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.8e}")
    }

    fn begin_array_value<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        CompactFormatter.begin_array_value(writer, first)
    }
}

/// Serialize any value to a compact JSON string with 17-significant-digit
/// floats.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut serializer = Serializer::with_formatter(&mut out, SciFloatFormatter);
    value
        .serialize(&mut serializer)
        .expect("serialization of plain data cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// Format one float the same way the JSON and CSV emitters do.
pub fn format_float(value: f64) -> String {
    format!("{value:.16e}")
}
