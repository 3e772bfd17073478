//! Line-oriented reports. Machine output is `[section]` headers followed by
//! `key = value` lines; text output is the same data indented for reading.

use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Machine,
}

#[derive(Default)]
pub struct Report {
    sections: Vec<(String, Vec<(String, String)>)>,
}

impl Report {
    pub fn section(&mut self, name: impl Into<String>) -> &mut Self {
        self.sections.push((name.into(), Vec::new()));
        self
    }

    pub fn kv(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.sections
            .last_mut()
            .expect("a section is open")
            .1
            .push((key.to_string(), value.to_string()));
        self
    }

    pub fn render(&self, format: OutputFormat) -> String {
        let mut out = String::new();
        for (i, (name, entries)) in self.sections.iter().enumerate() {
            match format {
                OutputFormat::Machine => {
                    if i > 0 {
                        out.push('\n');
                    }
                    writeln!(out, "[{name}]").unwrap();
                    for (k, v) in entries {
                        writeln!(out, "{k} = {v}").unwrap();
                    }
                }
                OutputFormat::Text => {
                    writeln!(out, "{name}:").unwrap();
                    let width = entries.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                    for (k, v) in entries {
                        writeln!(out, "  {k:<width$}  {v}").unwrap();
                    }
                }
            }
        }
        out
    }
}
