//! Property identifiers and property matrices.
//!
//! A matrix records, per embedding method, the published status of each
//! theoretical property (`yes`, `no`, `unknown`, or `yes` conditional on a
//! footnote such as a restricted language). Matrices ship as CSV with rows
//! per property and one column per method, plus a trailing free-text note
//! column; conditional cells are written `yes(note)`.

use std::fmt;

use crate::semantics::{Method, ALL_METHODS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scope {
    ABox,
    TBox,
    Kb,
}

impl Scope {
    pub const ALL: [Scope; 3] = [Scope::ABox, Scope::TBox, Scope::Kb];

    fn as_str(self) -> &'static str {
        match self {
            Scope::ABox => "abox",
            Scope::TBox => "tbox",
            Scope::Kb => "kb",
        }
    }
}

/// Ability (`exists`) versus guarantee (`forall`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Ability,
    Guarantee,
}

impl Mode {
    fn as_str(self) -> &'static str {
        match self {
            Mode::Ability => "exists",
            Mode::Guarantee => "forall",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropertyId {
    Soundness,
    SoundnessWrtLoss,
    Completeness,
    Entailed(Scope, Mode),
    WeakFaithful(Scope, Mode),
    StrongFaithful(Scope, Mode),
    FullyExpressive(Scope),
    CaptureExactly,
    CaptureExclusively,
}

impl PropertyId {
    pub fn as_string(self) -> String {
        match self {
            PropertyId::Soundness => "soundness".into(),
            PropertyId::SoundnessWrtLoss => "soundness-wrt-loss".into(),
            PropertyId::Completeness => "completeness".into(),
            PropertyId::Entailed(s, m) => format!("{}-{}-entailed", m.as_str(), s.as_str()),
            PropertyId::WeakFaithful(s, m) => {
                format!("{}-weak-{}-faithful", m.as_str(), s.as_str())
            }
            PropertyId::StrongFaithful(s, m) => {
                format!("{}-strong-{}-faithful", m.as_str(), s.as_str())
            }
            PropertyId::FullyExpressive(s) => format!("fully-{}-expressive", s.as_str()),
            PropertyId::CaptureExactly => "capture-exactly".into(),
            PropertyId::CaptureExclusively => "capture-exclusively".into(),
        }
    }

    pub fn parse(s: &str) -> Option<PropertyId> {
        let all = Self::all();
        all.into_iter().find(|p| p.as_string() == s)
    }

    pub fn all() -> Vec<PropertyId> {
        let mut out = vec![
            PropertyId::Soundness,
            PropertyId::SoundnessWrtLoss,
            PropertyId::Completeness,
        ];
        for s in Scope::ALL {
            for m in [Mode::Ability, Mode::Guarantee] {
                out.push(PropertyId::Entailed(s, m));
                out.push(PropertyId::WeakFaithful(s, m));
                out.push(PropertyId::StrongFaithful(s, m));
            }
            out.push(PropertyId::FullyExpressive(s));
        }
        out.push(PropertyId::CaptureExactly);
        out.push(PropertyId::CaptureExclusively);
        out
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Yes,
    No,
    Unknown,
    /// Holds with a qualifying note (restricted language, conjecture scope).
    Conditional(String),
}

impl Cell {
    pub fn as_positive(&self) -> bool {
        matches!(self, Cell::Yes | Cell::Conditional(_))
    }

    pub fn render(&self) -> String {
        match self {
            Cell::Yes => "yes".into(),
            Cell::No => "no".into(),
            Cell::Unknown => "unknown".into(),
            Cell::Conditional(note) => format!("yes({note})"),
        }
    }

    pub fn parse(s: &str) -> Result<Cell, String> {
        let s = s.trim();
        match s {
            "yes" => Ok(Cell::Yes),
            "no" => Ok(Cell::No),
            "unknown" | "?" => Ok(Cell::Unknown),
            other => {
                if let Some(rest) = other.strip_prefix("yes(").and_then(|r| r.strip_suffix(')')) {
                    Ok(Cell::Conditional(rest.to_string()))
                } else {
                    Err(format!("invalid cell `{other}`"))
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyMatrix {
    pub methods: Vec<Method>,
    pub rows: Vec<(PropertyId, Vec<Cell>, String)>,
}

impl PropertyMatrix {
    pub fn cell(&self, prop: PropertyId, method: Method) -> Option<&Cell> {
        let col = self.methods.iter().position(|&m| m == method)?;
        self.rows
            .iter()
            .find(|(p, _, _)| *p == prop)
            .map(|(_, cells, _)| &cells[col])
    }

    pub fn set(&mut self, prop: PropertyId, method: Method, cell: Cell) -> bool {
        let Some(col) = self.methods.iter().position(|&m| m == method) else {
            return false;
        };
        for (p, cells, _) in &mut self.rows {
            if *p == prop {
                cells[col] = cell;
                return true;
            }
        }
        false
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("property");
        for m in &self.methods {
            out.push(',');
            out.push_str(m.as_str());
        }
        out.push_str(",note\n");
        for (prop, cells, note) in &self.rows {
            out.push_str(&prop.as_string());
            for c in cells {
                out.push(',');
                out.push_str(&c.render());
            }
            out.push(',');
            out.push_str(note);
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<PropertyMatrix, String> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or("empty matrix file")?;
        let cols: Vec<&str> = header.split(',').map(str::trim).collect();
        if cols.first() != Some(&"property") {
            return Err("header must start with `property`".into());
        }
        let has_note = cols.last() == Some(&"note");
        let method_cols = &cols[1..cols.len() - usize::from(has_note)];
        let methods: Vec<Method> = method_cols
            .iter()
            .map(|s| Method::parse(s).ok_or(format!("unknown method `{s}`")))
            .collect::<Result<_, _>>()?;
        let mut rows = Vec::new();
        for line in lines {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != cols.len() {
                return Err(format!("row `{line}` has {} fields, expected {}", fields.len(), cols.len()));
            }
            let prop = PropertyId::parse(fields[0]).ok_or(format!("unknown property `{}`", fields[0]))?;
            let cells = fields[1..1 + methods.len()]
                .iter()
                .map(|s| Cell::parse(s))
                .collect::<Result<Vec<_>, _>>()?;
            let note = if has_note { fields[cols.len() - 1].to_string() } else { String::new() };
            rows.push((prop, cells, note));
        }
        Ok(PropertyMatrix { methods, rows })
    }
}

/// The published property matrix for the nine methods over their respective
/// languages (normal forms and pattern languages; footnotes mark claims
/// restricted to a sublanguage or conjectured beyond one).
pub fn published_matrix() -> PropertyMatrix {
    use Cell::{Conditional, No, Unknown, Yes};
    let methods = ALL_METHODS.to_vec();
    let elh = || Conditional("ELH normal form; conjectured beyond".into());
    let alcp = || Conditional("propositional fragment".into());
    let pos = || Conditional("positive patterns".into());
    let row = |p: PropertyId, cells: Vec<Cell>, note: &str| (p, cells, note.to_string());
    use Mode::{Ability as E, Guarantee as A};
    use Scope::{ABox, Kb, TBox};
    let rows = vec![
        row(
            PropertyId::Soundness,
            vec![Yes, Yes, No, No, No, Yes, No, Yes, Yes],
            "",
        ),
        row(
            PropertyId::Completeness,
            vec![Yes, Yes, No, No, No, No, No, No, No],
            "",
        ),
        row(
            PropertyId::Entailed(ABox, A),
            vec![Yes, alcp(), No, No, No, No, No, No, No],
            "",
        ),
        row(
            PropertyId::Entailed(TBox, A),
            vec![Yes, alcp(), No, No, No, No, No, No, No],
            "",
        ),
        row(
            PropertyId::WeakFaithful(ABox, E),
            vec![Yes, Yes, No, No, No, No, No, No, No],
            "",
        ),
        row(
            PropertyId::WeakFaithful(TBox, E),
            vec![Yes, alcp(), No, No, No, No, No, No, No],
            "",
        ),
        row(
            PropertyId::WeakFaithful(Kb, E),
            vec![Yes, alcp(), No, No, No, No, No, No, No],
            "",
        ),
        row(
            PropertyId::WeakFaithful(ABox, A),
            vec![Yes, Yes, No, No, No, No, No, No, No],
            "",
        ),
        row(
            PropertyId::WeakFaithful(TBox, A),
            vec![Yes, Unknown, No, No, No, No, No, No, No],
            "",
        ),
        row(
            PropertyId::StrongFaithful(ABox, E),
            vec![elh(), Yes, No, No, No, No, No, No, No],
            "",
        ),
        row(
            PropertyId::StrongFaithful(TBox, E),
            vec![elh(), alcp(), No, No, No, No, No, No, No],
            "",
        ),
        row(
            PropertyId::StrongFaithful(Kb, E),
            vec![elh(), alcp(), No, No, No, No, No, No, No],
            "",
        ),
        row(
            PropertyId::StrongFaithful(ABox, A),
            vec![No, No, No, No, No, No, No, No, No],
            "",
        ),
        row(
            PropertyId::StrongFaithful(TBox, A),
            vec![No, No, No, No, No, No, No, No, No],
            "",
        ),
        row(
            PropertyId::FullyExpressive(ABox),
            vec![Yes, Yes, No, No, No, No, Yes, Yes, Yes],
            "",
        ),
        row(
            PropertyId::FullyExpressive(TBox),
            vec![elh(), alcp(), No, No, No, No, No, Yes, pos()],
            "",
        ),
    ];
    PropertyMatrix { methods, rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let m = published_matrix();
        let csv = m.to_csv();
        let back = PropertyMatrix::from_csv(&csv).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn property_ids_round_trip() {
        for p in PropertyId::all() {
            assert_eq!(PropertyId::parse(&p.as_string()), Some(p));
        }
    }

    #[test]
    fn cell_lookup() {
        let m = published_matrix();
        assert!(m.cell(PropertyId::Soundness, Method::Boxel).unwrap().as_positive());
        assert_eq!(m.cell(PropertyId::Completeness, Method::Boxe), Some(&Cell::No));
        assert!(matches!(
            m.cell(PropertyId::WeakFaithful(Scope::TBox, Mode::Guarantee), Method::Cone),
            Some(Cell::Unknown)
        ));
    }
}
