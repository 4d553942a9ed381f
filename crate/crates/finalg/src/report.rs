//! Report assembly: human-readable lines and aligned tables interleaved with
//! tab-separated machine rows, plus the exit-code convention shared by every
//! command.

use std::fmt::Write as _;

/// Property holds / verdict positive.
pub const EXIT_OK: i32 = 0;
/// A counterexample was found (the negative verdict is itself a result).
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
/// Usage or format error.
pub const EXIT_USAGE: i32 = 2;
/// A configured resource bound was exceeded before a verdict was reached.
pub const EXIT_RESOURCE: i32 = 3;

/// Accumulates output for one command. Machine rows start with a row-kind
/// tag and separate fields with tabs; everything else is free-form text.
#[derive(Clone, Debug)]
pub struct Report {
    text: String,
    exit: i32,
}

impl Report {
    /// Start a report; the command echo becomes the first machine row.
    pub fn new(command: &str) -> Report {
        let mut report = Report {
            text: String::new(),
            exit: EXIT_OK,
        };
        report.row("command", &[command]);
        report
    }

    pub fn line(&mut self, text: impl AsRef<str>) {
        self.text.push_str(text.as_ref());
        self.text.push('\n');
    }

    pub fn blank(&mut self) {
        self.text.push('\n');
    }

    /// A tab-separated machine row: `kind<TAB>field<TAB>field…`. Fields must
    /// not contain tabs or newlines.
    pub fn row(&mut self, kind: &str, fields: &[&str]) {
        debug_assert!(
            std::iter::once(&kind)
                .chain(fields)
                .all(|f| !f.contains('\t') && !f.contains('\n')),
            "machine row fields must be tab- and newline-free"
        );
        self.text.push_str(kind);
        for field in fields {
            self.text.push('\t');
            self.text.push_str(field);
        }
        self.text.push('\n');
    }

    /// An aligned text table with a header line; columns are left-justified
    /// and separated by two spaces, with no trailing padding.
    pub fn table(&mut self, headers: &[&str], rows: &[Vec<String>]) {
        let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
        for row in rows {
            debug_assert_eq!(row.len(), headers.len());
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let put = |cells: Vec<&str>, text: &mut String| {
            let mut line = String::new();
            for (w, cell) in widths.iter().zip(&cells) {
                if !line.is_empty() {
                    line.push_str("  ");
                }
                let _ = write!(line, "{cell:<w$}");
            }
            text.push_str(line.trim_end());
            text.push('\n');
        };
        put(headers.to_vec(), &mut self.text);
        for row in rows {
            put(row.iter().map(String::as_str).collect(), &mut self.text);
        }
    }

    /// Record the exit code; later calls win, so order verdict decisions
    /// deliberately.
    pub fn set_exit(&mut self, code: i32) {
        self.exit = code;
    }

    pub fn exit_code(&self) -> i32 {
        self.exit
    }

    pub fn render(&self) -> &str {
        &self.text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_echo_is_the_first_machine_row() {
        let report = Report::new("classify A B");
        assert_eq!(report.render(), "command\tclassify A B\n");
        assert_eq!(report.exit_code(), EXIT_OK);
    }

    #[test]
    fn rows_are_tab_separated() {
        let mut report = Report::new("x");
        report.row("pair", &["1", "2"]);
        assert!(report.render().ends_with("pair\t1\t2\n"));
    }

    #[test]
    fn tables_align_and_trim() {
        let mut report = Report::new("x");
        report.table(
            &["a", "bbb"],
            &[
                vec!["one".into(), "2".into()],
                vec!["3".into(), "four".into()],
            ],
        );
        let lines: Vec<&str> = report.render().lines().skip(1).collect();
        assert_eq!(lines, vec!["a    bbb", "one  2", "3    four"]);
    }

    #[test]
    fn exit_code_is_last_writer_wins() {
        let mut report = Report::new("x");
        report.set_exit(EXIT_COUNTEREXAMPLE);
        report.set_exit(EXIT_RESOURCE);
        assert_eq!(report.exit_code(), EXIT_RESOURCE);
    }
}
