//! CSV schemas and plot scripts for experiment output.

use std::io::{Read, Write};

use crate::algdata::AuditRow;
use crate::error::{Error, Result};
use crate::estimate::{
    DecayRow, EstimateReport, ExactResult, Interval, ProperCounts, Record, Source,
};
use crate::matgrp::GroupSpec;

pub const PROB_HEADER: [&str; 17] = [
    "family",
    "q",
    "mode",
    "r",
    "s",
    "classC",
    "classD",
    "trials",
    "generates",
    "proper_reducible",
    "proper_subfield",
    "proper_other",
    "inconclusive",
    "point",
    "lo95",
    "hi95",
    "seed",
];

pub const DECAY_HEADER: [&str; 7] = [
    "p",
    "a",
    "q",
    "word",
    "trials",
    "proper_subfield_fraction",
    "scaled_fraction",
];

pub const AUDIT_HEADER: [&str; 7] = [
    "group",
    "case",
    "order",
    "label",
    "tabulated_dim",
    "recomputed_dim",
    "match",
];

/// Class column values for whole-group and order-restricted rows.
const WHOLE: &str = "G";
const ALL: &str = "all";

fn csv_err(e: csv::Error) -> Error {
    Error::parse(format!("csv: {e}"))
}

fn io_err(e: std::io::Error) -> Error {
    Error::invalid(format!("io: {e}"))
}

fn write_rows<W: Write>(out: W, header: &[&str], rows: Vec<Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.write_record(&r).map_err(csv_err)?;
    }
    w.flush().map_err(io_err)
}

fn read_rows<R: Read>(input: R, header: &[&str]) -> Result<Vec<csv::StringRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let got = r.headers().map_err(csv_err)?.clone();
    if got.iter().ne(header.iter().copied()) {
        return Err(Error::parse(format!(
            "unexpected header {:?}",
            got.iter().collect::<Vec<_>>()
        )));
    }
    r.records().map(|x| x.map_err(csv_err)).collect()
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn num<T: std::str::FromStr>(field: &str, s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::parse(format!("column {field}: bad value {s:?}")))
}

fn opt_num<T: std::str::FromStr>(field: &str, s: &str) -> Result<Option<T>> {
    if s.is_empty() {
        Ok(None)
    } else {
        num(field, s).map(Some)
    }
}

fn source_columns(src: &Source) -> [String; 4] {
    match src {
        Source::Whole => [String::new(), String::new(), WHOLE.into(), WHOLE.into()],
        Source::Orders { r, s } => [r.to_string(), s.to_string(), ALL.into(), ALL.into()],
        Source::Classes { r, s, c, d } => [r.to_string(), s.to_string(), c.clone(), d.clone()],
    }
}

fn parse_source(r: &str, s: &str, c: &str, d: &str) -> Result<Source> {
    let orders = (opt_num::<u128>("r", r)?, opt_num::<u128>("s", s)?);
    match orders {
        (None, None) if c == WHOLE && d == WHOLE => Ok(Source::Whole),
        (Some(r), Some(s)) if c == ALL && d == ALL => Ok(Source::Orders { r, s }),
        (Some(r), Some(s))
            if !c.is_empty()
                && !d.is_empty()
                && c != WHOLE
                && d != WHOLE
                && c != ALL
                && d != ALL =>
        {
            Ok(Source::Classes {
                r,
                s,
                c: c.into(),
                d: d.into(),
            })
        }
        _ => Err(Error::parse(format!(
            "inconsistent pair columns r={r:?} s={s:?} classC={c:?} classD={d:?}"
        ))),
    }
}

fn record_row(rec: &Record) -> Vec<String> {
    let (spec, source) = match rec {
        Record::Exact(e) => (&e.spec, &e.source),
        Record::Estimate(e) => (&e.spec, &e.source),
    };
    let mut row = vec![spec.name(), spec.field().order().to_string()];
    let [r, s, c, d] = source_columns(source);
    match rec {
        Record::Exact(e) => {
            row.push("exact".into());
            row.extend([r, s, c, d]);
            row.extend([
                e.denominator.to_string(),
                e.numerator.to_string(),
                "0".into(),
                "0".into(),
                (e.denominator - e.numerator).to_string(),
                "0".into(),
                if e.is_empty() {
                    String::new()
                } else {
                    e.to_f64().to_string()
                },
                String::new(),
                String::new(),
                String::new(),
            ]);
        }
        Record::Estimate(e) => {
            row.push("mc".into());
            row.extend([r, s, c, d]);
            row.extend([
                e.trials.to_string(),
                e.generates.to_string(),
                e.proper.reducible.to_string(),
                e.proper.subfield.to_string(),
                e.proper.other.to_string(),
                e.inconclusive.to_string(),
                e.point.to_string(),
                e.wilson95.lo.to_string(),
                e.wilson95.hi.to_string(),
                e.seed.to_string(),
            ]);
        }
    }
    row
}

fn parse_record(f: &csv::StringRecord) -> Result<Record> {
    if f.len() != PROB_HEADER.len() {
        return Err(Error::parse(format!(
            "expected {} columns, got {}",
            PROB_HEADER.len(),
            f.len()
        )));
    }
    let col = |i: usize| &f[i];
    let n = |i: usize| num::<u64>(PROB_HEADER[i], col(i));
    let spec = GroupSpec::from_q(col(0), num(PROB_HEADER[1], col(1))?)?;
    let source = parse_source(col(3), col(4), col(5), col(6))?;
    match col(2) {
        "exact" => {
            let denominator: u128 = num("trials", col(7))?;
            let numerator: u128 = num("generates", col(8))?;
            if numerator > denominator || n(9)? != 0 || n(10)? != 0 || n(12)? != 0 {
                return Err(Error::parse(
                    "exact rows carry only generating and other-proper counts",
                ));
            }
            if num::<u128>("proper_other", col(11))? != denominator - numerator {
                return Err(Error::parse("exact row counts do not add up"));
            }
            Ok(Record::Exact(ExactResult {
                spec,
                source,
                numerator,
                denominator,
            }))
        }
        "mc" => {
            let proper = ProperCounts {
                reducible: n(9)?,
                subfield: n(10)?,
                other: n(11)?,
            };
            let (trials, generates, inconclusive) = (n(7)?, n(8)?, n(12)?);
            if generates + proper.total() + inconclusive != trials {
                return Err(Error::parse("estimate row counts do not add up to trials"));
            }
            Ok(Record::Estimate(EstimateReport {
                spec,
                source,
                trials,
                generates,
                proper,
                inconclusive,
                point: num("point", col(13))?,
                wilson95: Interval {
                    lo: num("lo95", col(14))?,
                    hi: num("hi95", col(15))?,
                },
                seed: num("seed", col(16))?,
            }))
        }
        m => Err(Error::parse(format!("unknown mode {m:?}"))),
    }
}

/// Writes probability rows under [`PROB_HEADER`]. Exact rows put the
/// denominator in `trials`, the numerator in `generates` and leave the
/// interval and seed empty.
pub fn write_records<W: Write>(out: W, recs: &[Record]) -> Result<()> {
    write_rows(out, &PROB_HEADER, recs.iter().map(record_row).collect())
}

pub fn read_records<R: Read>(input: R) -> Result<Vec<Record>> {
    read_rows(input, &PROB_HEADER)?
        .iter()
        .map(parse_record)
        .collect()
}

pub fn records_to_string(recs: &[Record]) -> Result<String> {
    let mut buf = Vec::new();
    write_records(&mut buf, recs)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

pub fn write_decay<W: Write>(out: W, rows: &[DecayRow]) -> Result<()> {
    let rows = rows
        .iter()
        .map(|r| {
            vec![
                r.p.to_string(),
                r.a.to_string(),
                r.q.to_string(),
                r.word.clone(),
                r.trials.to_string(),
                r.fraction().to_string(),
                r.scaled_fraction().to_string(),
            ]
        })
        .collect();
    write_rows(out, &DECAY_HEADER, rows)
}

pub fn read_decay<R: Read>(input: R) -> Result<Vec<DecayRow>> {
    read_rows(input, &DECAY_HEADER)?
        .iter()
        .map(|f| {
            let trials: u64 = num("trials", &f[4])?;
            let fraction: f64 = num("proper_subfield_fraction", &f[5])?;
            let count = (fraction * trials as f64).round() as u64;
            let row = DecayRow {
                p: num("p", &f[0])?,
                a: num("a", &f[1])?,
                q: num("q", &f[2])?,
                word: f[3].to_string(),
                trials,
                proper_subfield: count,
            };
            if row.fraction() != fraction {
                return Err(Error::parse(format!(
                    "fraction {fraction} is not a count over {trials}"
                )));
            }
            Ok(row)
        })
        .collect()
}

pub fn write_audit<W: Write>(out: W, rows: &[AuditRow]) -> Result<()> {
    let rows = rows
        .iter()
        .map(|r| {
            vec![
                r.class.group.to_string(),
                r.class.case.to_string(),
                r.class.order.to_string(),
                r.class.label.to_string(),
                r.class.dim.to_string(),
                opt(r.recomputed),
                r.matches().to_string(),
            ]
        })
        .collect();
    write_rows(out, &AUDIT_HEADER, rows)
}

/// Kind of CSV a plot script reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotKind {
    Probability,
    Decay,
}

/// A gnuplot script drawing `csv_path` into `png_path`.
pub fn plot_script(kind: PlotKind, csv_path: &str, png_path: &str) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set terminal pngcairo size 900,600\n");
    s.push_str(&format!("set output '{png_path}'\n"));
    s.push_str("set logscale x\n");
    s.push_str("set xlabel 'q'\n");
    s.push_str("set key left top\n");
    match kind {
        PlotKind::Probability => {
            s.push_str("set ylabel 'probability of generation'\n");
            s.push_str("set yrange [0:1.05]\n");
            s.push_str(&format!(
                "plot '{csv_path}' every ::1 using 2:14:15:16 with yerrorbars title 'Wilson 95%', \\\n     '' every ::1 using 2:14 with linespoints title 'point estimate'\n"
            ));
        }
        PlotKind::Decay => {
            s.push_str("set logscale y\n");
            s.push_str("set ylabel 'fraction with trace in a proper subfield'\n");
            s.push_str(&format!(
                "plot '{csv_path}' every ::1 using 3:6 with linespoints title 'fraction', \\\n     '' every ::1 using 3:7 with linespoints title 'fraction * sqrt(q)'\n"
            ));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algdata::audit_table1;
    use crate::estimate::{
        decay_exact, exact_p, monte_carlo_p, subfield_trace_decay, McOptions, PairSource,
        COMMUTATOR,
    };
    use crate::ffield::FiniteField;
    use crate::matgrp::{elements_of_order, Family};
    use proptest::prelude::*;

    fn psl2(q: u64) -> GroupSpec {
        GroupSpec::from_q("PSL2", q).unwrap()
    }

    #[test]
    fn exact_row_layout() {
        let e = exact_p(&psl2(7), 2, 3, 10_000).unwrap();
        let text = records_to_string(&[Record::Exact(e.clone())]).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), PROB_HEADER.join(","));
        assert_eq!(
            lines.next().unwrap(),
            format!(
                "PSL2,7,exact,2,3,all,all,1176,336,0,0,840,0,{},,,",
                336.0 / 1176.0
            )
        );
        assert_eq!(
            read_records(text.as_bytes()).unwrap(),
            vec![Record::Exact(e)]
        );
    }

    #[test]
    fn records_round_trip() {
        let s = psl2(7);
        let inv = elements_of_order(&s, 2, 10_000).unwrap().remove(0).class;
        let thr = elements_of_order(&s, 3, 10_000).unwrap().remove(0).class;
        let sp4 = GroupSpec::new(Family::Sp4, FiniteField::new(7, 1).unwrap(), true);
        let recs = vec![
            Record::Exact(exact_p(&s, 2, 3, 10_000).unwrap()),
            Record::Exact(exact_p(&s, 5, 3, 10_000).unwrap()),
            Record::Estimate(
                monte_carlo_p(&s, &PairSource::WholeGroup, &McOptions::new(500, 1)).unwrap(),
            ),
            Record::Estimate(
                monte_carlo_p(&s, &PairSource::Classes(inv, thr), &McOptions::new(500, 2)).unwrap(),
            ),
            Record::Estimate(
                monte_carlo_p(&sp4, &PairSource::WholeGroup, &McOptions::new(50, 3)).unwrap(),
            ),
        ];
        let text = records_to_string(&recs).unwrap();
        assert_eq!(read_records(text.as_bytes()).unwrap(), recs);
        // empty-class exact rows leave the point empty
        assert!(text.lines().nth(2).unwrap().contains(",0,0,0,0,0,0,,,,"));
    }

    #[test]
    fn rejects_malformed_rows() {
        let h = PROB_HEADER.join(",");
        for bad in [
            "PSL2,7,exact,2,3,all,all,10,11,0,0,0,0,,,,",
            "PSL2,7,mc,2,3,all,all,10,1,0,0,0,0,0.1,0,1,5",
            "PSL2,6,exact,2,3,all,all,10,1,0,0,9,0,,,,",
            "PSL2,7,guess,2,3,all,all,10,1,0,0,9,0,,,,",
            "PSL2,7,exact,,3,all,all,10,1,0,0,9,0,,,,",
        ] {
            assert!(
                read_records(format!("{h}\n{bad}\n").as_bytes()).is_err(),
                "{bad}"
            );
        }
        assert!(read_records("a,b\n1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn decay_round_trip() {
        let mut rows = subfield_trace_decay(2, &[2, 4], &COMMUTATOR, 300, 9, None).unwrap();
        rows.push(decay_exact(2, 2, &COMMUTATOR, 10_000).unwrap());
        let mut buf = Vec::new();
        write_decay(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("p,a,q,word,trials,proper_subfield_fraction,scaled_fraction\n"));
        assert_eq!(read_decay(text.as_bytes()).unwrap(), rows);
    }

    #[test]
    fn audit_csv_marks_two_rows() {
        let mut buf = Vec::new();
        write_audit(&mut buf, &audit_table1()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 21);
        let bad: Vec<&str> = text.lines().filter(|l| l.ends_with(",false")).collect();
        assert_eq!(
            bad,
            vec!["E7,p!=3,3,A5A2,70,90,false", "F4,p!=3,3,A2~A2,34,36,false"]
        );
    }

    #[test]
    fn plot_scripts_reference_their_inputs() {
        let s = plot_script(PlotKind::Probability, "out.csv", "out.png");
        assert!(s.contains("'out.csv'") && s.contains("'out.png'") && s.contains("2:14:15:16"));
        let d = plot_script(PlotKind::Decay, "d.csv", "d.png");
        assert!(d.contains("3:6") && d.contains("logscale y"));
    }

    proptest! {
        #[test]
        fn estimate_rows_round_trip(gen in 0u64..1000, red in 0u64..1000, sub in 0u64..1000, oth in 0u64..1000, inc in 0u64..1000, seed in any::<u64>(), q in prop::sample::select(vec![2u64, 9, 49, 1009])) {
            prop_assume!(gen + red + sub + oth + inc > 0);
            let rep = EstimateReport::from_counts(
                GroupSpec::from_q("PSp4", q).unwrap(),
                Source::Orders { r: 2, s: 3 },
                seed,
                gen,
                ProperCounts { reducible: red, subfield: sub, other: oth },
                inc,
            );
            let recs = vec![Record::Estimate(rep)];
            let text = records_to_string(&recs).unwrap();
            prop_assert_eq!(read_records(text.as_bytes()).unwrap(), recs);
        }
    }
}
