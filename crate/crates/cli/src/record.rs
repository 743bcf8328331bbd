use impurity_core::{ClassId, LabelInterner};

use crate::config::InputFormat;

/// One event of the input stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamRecord {
    /// 0-based ordinal of the event.
    pub index: u64,
    pub label: ClassId,
}

/// Extracts the label text from one raw input line.
pub fn parse_label(raw: &str, format: InputFormat) -> Result<&str, String> {
    let raw = raw.strip_suffix('\r').unwrap_or(raw);
    let label = match format {
        InputFormat::Lines => raw.trim(),
        InputFormat::Csv { column } => {
            let field = raw.split(',').nth(column).ok_or_else(|| {
                format!(
                    "expected at least {} comma-separated columns, found {}",
                    column + 1,
                    raw.split(',').count()
                )
            })?;
            field.trim()
        }
    };
    if label.is_empty() {
        return Err("empty label".into());
    }
    Ok(label)
}

pub fn parse_record(
    raw: &str,
    format: InputFormat,
    index: u64,
    interner: &mut LabelInterner,
) -> Result<StreamRecord, String> {
    let label = parse_label(raw, format)?;
    Ok(StreamRecord {
        index,
        label: interner.intern(label),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_format_uses_whole_trimmed_line() {
        assert_eq!(parse_label("cat", InputFormat::Lines), Ok("cat"));
        assert_eq!(parse_label("  two words \r", InputFormat::Lines), Ok("two words"));
        assert!(parse_label("", InputFormat::Lines).is_err());
        assert!(parse_label("   ", InputFormat::Lines).is_err());
    }

    #[test]
    fn csv_format_selects_column() {
        let fmt = InputFormat::Csv { column: 1 };
        assert_eq!(parse_label("3,red,x", fmt), Ok("red"));
        assert!(parse_label("3", fmt).is_err());
        assert!(parse_label("3,,x", fmt).is_err());
    }

    #[test]
    fn records_are_interned() {
        let mut interner = LabelInterner::new();
        let a = parse_record("cat", InputFormat::Lines, 0, &mut interner).unwrap();
        let b = parse_record("dog", InputFormat::Lines, 1, &mut interner).unwrap();
        let c = parse_record("cat", InputFormat::Lines, 2, &mut interner).unwrap();
        assert_eq!(a.label, c.label);
        assert_ne!(a.label, b.label);
        assert_eq!(c.index, 2);
    }
}
