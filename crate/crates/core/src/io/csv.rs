//! CSV formats for response datasets and task sheets.
//!
//! Datasets use the header `subject_id,prior_pct,posterior_pct,phrase` with
//! canonical phrase tokens. Task sheets use
//! `subject_id,task,prior_pct,posterior_pct`, one row per task, rows of one
//! subject contiguous and in presentation order.

use std::io::{Read, Write};

use csv::{ReaderBuilder, StringRecord, Terminator, WriterBuilder};

use crate::empirical::{ResponseDataset, ResponseRecord};
use crate::error::{Error, Result};
use crate::experiment::TaskSheet;
use crate::phrase::{Phrase, UpdatePair};

pub const DATASET_HEADER: [&str; 4] = ["subject_id", "prior_pct", "posterior_pct", "phrase"];
pub const TASKS_HEADER: [&str; 4] = ["subject_id", "task", "prior_pct", "posterior_pct"];

fn parse_error(line: u64, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        kind => parse_error(line, format!("{kind:?}")),
    }
}

/// Rows after the header, each with its 1-based line number.
fn rows<R: Read>(reader: R, header: &[&str; 4]) -> Result<Vec<(u64, StringRecord)>> {
    let mut rdr = ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(reader);
    let mut out = Vec::new();
    let mut seen_header = false;
    for result in rdr.records() {
        let record = result.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        if !seen_header {
            if record.iter().ne(header.iter().copied()) {
                return Err(parse_error(
                    line,
                    format!("expected header `{}`", header.join(",")),
                ));
            }
            seen_header = true;
            continue;
        }
        if record.len() != header.len() {
            return Err(parse_error(
                line,
                format!("expected {} fields, found {}", header.len(), record.len()),
            ));
        }
        out.push((line, record));
    }
    if !seen_header {
        return Err(parse_error(1, "missing header"));
    }
    Ok(out)
}

fn number(line: u64, field: &str, what: &str) -> Result<f64> {
    field
        .parse::<f64>()
        .map_err(|_| parse_error(line, format!("{what} `{field}` is not a number")))
}

fn subject(line: u64, field: &str) -> Result<String> {
    if field.is_empty() {
        return Err(parse_error(line, "empty subject_id"));
    }
    Ok(field.to_string())
}

pub fn read_dataset<R: Read>(reader: R) -> Result<ResponseDataset> {
    let mut records = Vec::new();
    for (line, row) in rows(reader, &DATASET_HEADER)? {
        let subject_id = subject(line, &row[0])?;
        let prior = number(line, &row[1], "prior_pct")?;
        let posterior = number(line, &row[2], "posterior_pct")?;
        let pair =
            UpdatePair::new(prior, posterior).map_err(|e| parse_error(line, e.to_string()))?;
        let phrase: Phrase = row[3]
            .parse()
            .map_err(|e: Error| parse_error(line, e.to_string()))?;
        let record = ResponseRecord::new(subject_id, pair, phrase)
            .map_err(|e| parse_error(line, e.to_string()))?;
        records.push(record);
    }
    Ok(ResponseDataset::new(records))
}

pub fn write_dataset<W: Write>(writer: W, dataset: &ResponseDataset) -> Result<()> {
    let mut wtr = WriterBuilder::new()
        .terminator(Terminator::Any(b'\n'))
        .from_writer(writer);
    wtr.write_record(DATASET_HEADER).map_err(csv_error)?;
    for r in dataset {
        let pair = r.pair();
        wtr.write_record([
            r.subject_id(),
            &pair.p1().to_string(),
            &pair.p2().to_string(),
            r.phrase().token(),
        ])
        .map_err(csv_error)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_task_sheets<R: Read>(reader: R) -> Result<Vec<TaskSheet>> {
    let mut groups: Vec<(String, u64, Vec<UpdatePair>)> = Vec::new();
    for (line, row) in rows(reader, &TASKS_HEADER)? {
        let subject_id = subject(line, &row[0])?;
        let task: usize = row[1].parse().map_err(|_| {
            parse_error(
                line,
                format!("task `{}` is not a positive integer", &row[1]),
            )
        })?;
        let prior = number(line, &row[2], "prior_pct")?;
        let posterior = number(line, &row[3], "posterior_pct")?;
        let pair =
            UpdatePair::new(prior, posterior).map_err(|e| parse_error(line, e.to_string()))?;
        match groups.last_mut() {
            Some((id, _, tasks)) if *id == subject_id => {
                if task != tasks.len() + 1 {
                    return Err(parse_error(
                        line,
                        format!("expected task {}, found {task}", tasks.len() + 1),
                    ));
                }
                tasks.push(pair);
            }
            _ => {
                if groups.iter().any(|(id, _, _)| *id == subject_id) {
                    return Err(parse_error(
                        line,
                        format!("rows for subject {subject_id} are not contiguous"),
                    ));
                }
                if task != 1 {
                    return Err(parse_error(line, format!("expected task 1, found {task}")));
                }
                groups.push((subject_id, line, vec![pair]));
            }
        }
    }
    groups
        .into_iter()
        .map(|(id, line, tasks)| {
            TaskSheet::new(id, tasks).map_err(|e| parse_error(line, e.to_string()))
        })
        .collect()
}

pub fn write_task_sheets<W: Write>(writer: W, sheets: &[TaskSheet]) -> Result<()> {
    let mut wtr = WriterBuilder::new()
        .terminator(Terminator::Any(b'\n'))
        .from_writer(writer);
    wtr.write_record(TASKS_HEADER).map_err(csv_error)?;
    for sheet in sheets {
        for (i, pair) in sheet.tasks().iter().enumerate() {
            wtr.write_record([
                sheet.subject_id(),
                &(i + 1).to_string(),
                &pair.p1().to_string(),
                &pair.p2().to_string(),
            ])
            .map_err(csv_error)?;
        }
    }
    wtr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::generate_tasks;

    #[test]
    fn dataset_text_format() {
        let data: ResponseDataset = [
            ResponseRecord::new(
                "s001",
                UpdatePair::new(50.0, 5.0).unwrap(),
                Phrase::GreatDealLess,
            )
            .unwrap(),
            ResponseRecord::new(
                "s,2",
                UpdatePair::new(12.5, 40.0).unwrap(),
                Phrase::QuiteABitMore,
            )
            .unwrap(),
        ]
        .into_iter()
        .collect();
        let mut buf = Vec::new();
        write_dataset(&mut buf, &data).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "subject_id,prior_pct,posterior_pct,phrase\n\
             s001,50,5,great_deal_less\n\
             \"s,2\",12.5,40,quite_a_bit_more\n"
        );
        assert_eq!(read_dataset(text.as_bytes()).unwrap(), data);
    }

    #[test]
    fn parse_errors_cite_lines() {
        let text = "subject_id,prior_pct,posterior_pct,phrase\ns1,50,5,great_deal_less\ns1,40,60,somewhat_mroe\n";
        match read_dataset(text.as_bytes()) {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("somewhat_mroe"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        let cases = [
            ("prior,posterior\n", 1),
            (
                "subject_id,prior_pct,posterior_pct,phrase\ns1,abc,5,little_less\n",
                2,
            ),
            ("subject_id,prior_pct,posterior_pct,phrase\ns1,50,5\n", 2),
            (
                "subject_id,prior_pct,posterior_pct,phrase\ns1,50,105,little_more\n",
                2,
            ),
            (
                "subject_id,prior_pct,posterior_pct,phrase\ns1,50,5,little_more\n",
                2,
            ),
            (
                "subject_id,prior_pct,posterior_pct,phrase\ns1,50,50,equally_likely\n",
                2,
            ),
            (
                "subject_id,prior_pct,posterior_pct,phrase\n,50,5,little_less\n",
                2,
            ),
            ("", 1),
        ];
        for (text, expected) in cases {
            match read_dataset(text.as_bytes()) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, expected, "{text:?}"),
                other => panic!("{text:?}: unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn task_sheets_round_trip() {
        let sheets = generate_tasks(3, 6, 4).unwrap();
        let mut buf = Vec::new();
        write_task_sheets(&mut buf, &sheets).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("subject_id,task,prior_pct,posterior_pct\ns001,1,"));
        assert_eq!(text.lines().count(), 19);
        assert_eq!(read_task_sheets(text.as_bytes()).unwrap(), sheets);
    }

    #[test]
    fn task_sheet_errors() {
        let bad_order = "subject_id,task,prior_pct,posterior_pct\na,1,1,2\na,3,2,1\n";
        assert!(matches!(
            read_task_sheets(bad_order.as_bytes()),
            Err(Error::Parse { line: 3, .. })
        ));
        let split = "subject_id,task,prior_pct,posterior_pct\na,1,1,2\na,2,2,1\nb,1,1,2\nb,2,2,1\na,1,3,4\n";
        assert!(matches!(
            read_task_sheets(split.as_bytes()),
            Err(Error::Parse { line: 6, .. })
        ));
        let unbalanced = "subject_id,task,prior_pct,posterior_pct\na,1,1,2\na,2,3,4\n";
        assert!(matches!(
            read_task_sheets(unbalanced.as_bytes()),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
