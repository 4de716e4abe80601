use std::fmt::Write;

/// Plain-text report: a title, key/value lines, then optional row tables.
#[derive(Default)]
pub struct Table {
    title: String,
    pairs: Vec<(String, String)>,
    grids: Vec<(String, Vec<String>, Vec<Vec<String>>)>,
}

impl Table {
    pub fn new(title: impl Into<String>) -> Self {
        Table { title: title.into(), ..Default::default() }
    }

    pub fn kv(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.pairs.push((key.to_string(), value.to_string()));
        self
    }

    pub fn grid(&mut self, caption: &str, header: &[&str], rows: Vec<Vec<String>>) -> &mut Self {
        self.grids.push((caption.to_string(), header.iter().map(|s| s.to_string()).collect(), rows));
        self
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.title).unwrap();
        writeln!(out, "{}", "=".repeat(self.title.chars().count())).unwrap();
        let kw = self.pairs.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        for (k, v) in &self.pairs {
            writeln!(out, "{k:<kw$}  {v}").unwrap();
        }
        for (caption, header, rows) in &self.grids {
            writeln!(out).unwrap();
            if !caption.is_empty() {
                writeln!(out, "{caption}").unwrap();
            }
            let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
            for r in rows {
                for (i, cell) in r.iter().enumerate() {
                    if i < widths.len() {
                        widths[i] = widths[i].max(cell.chars().count());
                    }
                }
            }
            let line = |cells: &[String]| cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ");
            writeln!(out, "{}", line(header)).unwrap();
            writeln!(out, "{}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  ")).unwrap();
            for r in rows {
                writeln!(out, "{}", line(r)).unwrap();
            }
        }
        out
    }
}

pub fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

pub fn list(xs: &[f64]) -> String {
    let body: Vec<String> = xs.iter().map(|x| format!("{x:.6}")).collect();
    format!("({})", body.join(", "))
}
