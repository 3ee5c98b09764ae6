//! Job files: a group, its series and optional Zassenhaus subgroups, in TOML.

use serde::Deserialize;

use transfinite::ordinal::Ordinal;
use transfinite::permgroup::PermGroup;
use transfinite::series::{PermSeries, SeriesError, TransfiniteSeries};
use transfinite::tower::{IntervalSet, LabelPattern, PositionBijection, SimpleLabel, TowerGroup, TowerSeries};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    command: Option<String>,
    group: RawGroup,
    #[serde(default)]
    series: Vec<RawSeries>,
    zassenhaus: Option<RawZassenhaus>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawGroup {
    Perm { degree: usize, generators: Vec<String> },
    Tower { bound: String, labels: RawLabels },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawLabels {
    Constant(String),
    Parity { even: String, odd: String },
    Piecewise(Vec<RawPiece>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPiece {
    from: String,
    to: String,
    label: String,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeries {
    name: Option<String>,
    /// Permutation groups: generators of each term, bottom first.
    terms: Option<Vec<Vec<String>>>,
    /// Tower groups: the support of each term, bottom first.
    supports: Option<Vec<String>>,
    /// Tower groups: position blocks `[lo, hi)` in enumeration order.
    blocks: Option<Vec<[String; 2]>>,
    /// Tower groups: block moves applied to the identity enumeration.
    moves: Option<Vec<RawMove>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMove {
    start: String,
    end: String,
    insert_at: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawZassenhaus {
    first_upper: Vec<String>,
    first_lower: Vec<String>,
    second_upper: Vec<String>,
    second_lower: Vec<String>,
}

/// Error in a job file, with the line and column it refers to when known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobError {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl std::fmt::Display for JobError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.line, self.column) {
            (Some(line), Some(column)) => write!(f, "{line}:{column}: {}", self.message),
            _ => f.write_str(&self.message),
        }
    }
}

/// A series that failed to build because a term is not a subgroup; this
/// is a verdict on the series rather than an input error.
#[derive(Debug, Clone)]
pub enum SeriesEntry {
    Built(TransfiniteSeries),
    Rejected(String),
}

#[derive(Debug, Clone)]
pub struct NamedSeries {
    pub name: String,
    pub entry: SeriesEntry,
}

#[derive(Debug, Clone)]
pub struct Zassenhaus {
    pub first_upper: PermGroup,
    pub first_lower: PermGroup,
    pub second_upper: PermGroup,
    pub second_lower: PermGroup,
}

#[derive(Debug, Clone)]
pub struct Job {
    pub command: Option<String>,
    pub series: Vec<NamedSeries>,
    pub zassenhaus: Option<Zassenhaus>,
}

/// Resolves error positions by finding the offending text in the source.
struct Locator<'a> {
    source: &'a str,
}

impl Locator<'_> {
    fn error(&self, needle: &str, message: String) -> JobError {
        let quoted = format!("\"{needle}\"");
        let found = self.source.find(&quoted).map(|k| k + 1).or_else(|| {
            (!needle.is_empty())
                .then(|| self.source.find(needle))
                .flatten()
        });
        let (line, column) = match found {
            Some(offset) => {
                let before = &self.source[..offset];
                let line = before.matches('\n').count() + 1;
                let column = offset - before.rfind('\n').map_or(0, |k| k + 1) + 1;
                (Some(line), Some(column))
            }
            None => (None, None),
        };
        JobError { line, column, message }
    }

    fn ordinal(&self, text: &str, what: &str) -> Result<Ordinal, JobError> {
        text.parse()
            .map_err(|e| self.error(text, format!("{what}: invalid ordinal {text:?}: {e}")))
    }

    fn label(&self, text: &str) -> Result<SimpleLabel, JobError> {
        text.parse()
            .map_err(|e| self.error(text, format!("invalid label {text:?}: {e}")))
    }
}

pub fn parse(source: &str) -> Result<Job, JobError> {
    let raw: RawJob = toml::from_str(source).map_err(|e| {
        let (line, column) = match e.span() {
            Some(span) => {
                let before = &source[..span.start];
                (
                    Some(before.matches('\n').count() + 1),
                    Some(span.start - before.rfind('\n').map_or(0, |k| k + 1) + 1),
                )
            }
            None => (None, None),
        };
        JobError {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;
    let at = Locator { source };
    let series_name = |k: usize, raw: &RawSeries| raw.name.clone().unwrap_or_else(|| format!("series{}", k + 1));
    match raw.group {
        RawGroup::Perm { degree, generators } => {
            let gens: Vec<&str> = generators.iter().map(String::as_str).collect();
            let group = PermGroup::from_cycles(degree, &gens).map_err(|e| {
                at.error(generators.first().map_or("generators", |g| g.as_str()), format!("group: {e}"))
            })?;
            let subgroup = |gens: &[String], what: &str| -> Result<PermGroup, JobError> {
                let parsed: Vec<&str> = gens.iter().map(String::as_str).collect();
                group
                    .subgroup_from_cycles(&parsed)
                    .map_err(|e| at.error(gens.first().map_or("", |g| g.as_str()), format!("{what}: {e}")))
            };
            let mut series = Vec::new();
            for (k, s) in raw.series.iter().enumerate() {
                let name = series_name(k, s);
                if s.supports.is_some() || s.blocks.is_some() || s.moves.is_some() {
                    return Err(at.error(&name, format!("{name}: permutation series take `terms` only")));
                }
                let Some(terms) = &s.terms else {
                    return Err(at.error(&name, format!("{name}: missing `terms`")));
                };
                let terms = terms
                    .iter()
                    .enumerate()
                    .map(|(i, gens)| subgroup(gens, &format!("{name} term {}", i + 1)))
                    .collect::<Result<Vec<_>, _>>()?;
                let entry = match PermSeries::new(group.clone(), terms) {
                    Ok(s) => SeriesEntry::Built(s.into()),
                    Err(e @ SeriesError::NotSubgroup { .. }) => SeriesEntry::Rejected(e.to_string()),
                    Err(e) => return Err(at.error(&name, format!("{name}: {e}"))),
                };
                series.push(NamedSeries { name, entry });
            }
            let zassenhaus = match raw.zassenhaus {
                Some(z) => Some(Zassenhaus {
                    first_upper: subgroup(&z.first_upper, "first_upper")?,
                    first_lower: subgroup(&z.first_lower, "first_lower")?,
                    second_upper: subgroup(&z.second_upper, "second_upper")?,
                    second_lower: subgroup(&z.second_lower, "second_lower")?,
                }),
                None => None,
            };
            Ok(Job {
                command: raw.command,
                series,
                zassenhaus,
            })
        }
        RawGroup::Tower { bound, labels } => {
            if raw.zassenhaus.is_some() {
                return Err(at.error("[zassenhaus]", "zassenhaus needs a permutation group".into()));
            }
            let bound_ordinal = at.ordinal(&bound, "bound")?;
            let pattern = match &labels {
                RawLabels::Constant(l) => LabelPattern::Constant(at.label(l)?),
                RawLabels::Parity { even, odd } => LabelPattern::Parity {
                    even: at.label(even)?,
                    odd: at.label(odd)?,
                },
                RawLabels::Piecewise(pieces) => LabelPattern::Piecewise(
                    pieces
                        .iter()
                        .map(|p| Ok((at.ordinal(&p.from, "from")?, at.ordinal(&p.to, "to")?, at.label(&p.label)?)))
                        .collect::<Result<Vec<_>, JobError>>()?,
                ),
            };
            let group =
                TowerGroup::new(bound_ordinal.clone(), pattern).map_err(|e| at.error("labels", format!("group: {e}")))?;
            let mut series = Vec::new();
            for (k, s) in raw.series.iter().enumerate() {
                let name = series_name(k, s);
                let tower = tower_series(&at, &group, &bound_ordinal, &name, s)?;
                series.push(NamedSeries {
                    name,
                    entry: SeriesEntry::Built(tower.into()),
                });
            }
            Ok(Job {
                command: raw.command,
                series,
                zassenhaus: None,
            })
        }
    }
}

fn tower_series(
    at: &Locator<'_>,
    group: &TowerGroup,
    bound: &Ordinal,
    name: &str,
    s: &RawSeries,
) -> Result<TowerSeries, JobError> {
    let given = [s.supports.is_some(), s.blocks.is_some(), s.moves.is_some()];
    if s.terms.is_some() || given.iter().filter(|g| **g).count() > 1 {
        return Err(at.error(name, format!("{name}: give one of `supports`, `blocks` or `moves`")));
    }
    let fail = |needle: &str, e: &dyn std::fmt::Display| at.error(needle, format!("{name}: {e}"));
    if let Some(supports) = &s.supports {
        let sets = supports
            .iter()
            .map(|text| text.parse::<IntervalSet>().map_err(|e| fail(text, &e)))
            .collect::<Result<Vec<_>, _>>()?;
        return TowerSeries::explicit(group.clone(), sets).map_err(|e| fail(name, &e));
    }
    let bijection = if let Some(blocks) = &s.blocks {
        let blocks = blocks
            .iter()
            .map(|[lo, hi]| Ok((at.ordinal(lo, name)?, at.ordinal(hi, name)?)))
            .collect::<Result<Vec<_>, JobError>>()?;
        PositionBijection::from_blocks(bound.clone(), blocks).map_err(|e| fail(name, &e))?
    } else {
        let mut pi = PositionBijection::identity(bound.clone());
        for m in s.moves.iter().flatten() {
            let (start, end) = (at.ordinal(&m.start, name)?, at.ordinal(&m.end, name)?);
            let insert_at = m.insert_at.as_deref().map(|t| at.ordinal(t, name)).transpose()?;
            pi = pi
                .move_block(&start, &end, insert_at.as_ref())
                .map_err(|e| fail(&m.start, &e))?;
        }
        pi
    };
    TowerSeries::from_bijection(group.clone(), bijection).map_err(|e| fail(name, &e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_permutation_jobs() {
        let job = parse(
            r#"
            command = "jh-check"
            [group]
            kind = "perm"
            degree = 6
            generators = ["(0 1 2 3 4 5)"]
            [[series]]
            name = "via C2"
            terms = [[], ["(0 3)(1 4)(2 5)"], ["(0 1 2 3 4 5)"]]
            "#,
        )
        .unwrap();
        assert_eq!(job.command.as_deref(), Some("jh-check"));
        assert_eq!(job.series.len(), 1);
        assert!(matches!(&job.series[0].entry, SeriesEntry::Built(s) if s.length() == Ordinal::from(3u32)));
    }

    #[test]
    fn parses_tower_jobs() {
        let job = parse(
            r#"
            [group]
            kind = "tower"
            bound = "w+1"
            labels = { even = "C2", odd = "C3" }
            [[series]]
            moves = [{ start = "0", end = "1" }]
            [[series]]
            supports = ["{}", "[0,w)", "[0,w+1)"]
            "#,
        )
        .unwrap();
        let lengths: Vec<String> = job
            .series
            .iter()
            .map(|s| match &s.entry {
                SeriesEntry::Built(s) => s.length().to_string(),
                SeriesEntry::Rejected(_) => unreachable!(),
            })
            .collect();
        assert_eq!(lengths, ["w+2", "3"]);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("[group]\nkind = \"perm\"\ndegree = 3\ngenerators = [\"(0 1 5)\"]\n").unwrap_err();
        assert_eq!((e.line, e.column), (Some(4), Some(16)));
        let e = parse("[group]\nkind = \"perm\"\ndegree = 3\ngenerators = [\"(0 1)\"\n").unwrap_err();
        assert!(e.line.is_some());
        let e = parse("[group]\nkind = \"tower\"\nbound = \"w+\"\nlabels = \"C2\"\n").unwrap_err();
        assert_eq!(e.line, Some(3));
    }
}
