//! Report rendering: prose lines for people, `key=value` lines for tools.

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Clone)]
pub struct Report {
    verb: &'static str,
    fields: Vec<(String, String)>,
    lines: Vec<String>,
    /// `false` for a negative mathematical verdict.
    pub holds: bool,
}

impl Report {
    pub fn new(verb: &'static str) -> Report {
        Report {
            verb,
            fields: Vec::new(),
            lines: Vec::new(),
            holds: true,
        }
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl ToString) {
        self.fields.push((key.into(), value.to_string()));
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn fail(&mut self, reason: impl ToString) {
        self.holds = false;
        let reason = reason.to_string();
        self.line(format!("verdict: false ({reason})"));
        self.field("reason", reason);
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                for line in &self.lines {
                    out.push_str(line);
                    out.push('\n');
                }
            }
            Format::Machine => {
                out.push_str(&format!("verb={}\n", self.verb));
                for (key, value) in &self.fields {
                    out.push_str(&format!("{key}={}\n", value.replace('\n', " ")));
                }
                out.push_str(&format!("status={}\n", if self.holds { "ok" } else { "false" }));
            }
        }
        out
    }
}

pub fn yes_no(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_lines_are_ordered() {
        let mut r = Report::new("validate");
        r.field("b", 2);
        r.field("a", "x\ny");
        r.line("hello");
        assert_eq!(r.render(Format::Machine), "verb=validate\nb=2\na=x y\nstatus=ok\n");
        assert_eq!(r.render(Format::Text), "hello\n");
        r.fail("bad");
        assert!(r.render(Format::Machine).ends_with("reason=bad\nstatus=false\n"));
    }
}
