//! `--config FILE`: line-oriented `key=value` defaults for any flag.
//!
//! Keys are long flag names without the dashes. Blank lines and lines
//! starting with `#` are ignored. A flag given on the command line wins
//! over the same key in the file.

use std::fs;

use clap::Command;

use crate::Failure;

/// Removes `--config FILE` from `args` and appends the file's settings as
/// flags of the chosen subcommand.
pub fn expand(args: Vec<String>, cmd: &Command) -> Result<Vec<String>, Failure> {
    let mut rest = Vec::with_capacity(args.len());
    let mut path = None;
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            let p = it.next().ok_or_else(|| Failure::usage("--config: missing file name"))?;
            path = Some(p);
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let text = fs::read_to_string(&path).map_err(|e| Failure::usage(format!("--config: {path}: {e}")))?;
    let sub_name = rest
        .iter()
        .skip(1)
        .find(|a| !a.starts_with('-'))
        .cloned()
        .ok_or_else(|| Failure::usage("--config: no subcommand given"))?;
    let sub = cmd
        .find_subcommand(&sub_name)
        .ok_or_else(|| Failure::usage(format!("unknown subcommand '{sub_name}'")))?;

    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = || format!("--config: {path}:{}", n + 1);
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("{}: expected key=value", at())))?;
        let key = key.trim().trim_start_matches("--");
        let value = value.trim();
        let arg = sub
            .get_arguments()
            .find(|a| a.get_long() == Some(key))
            .ok_or_else(|| Failure::usage(format!("{}: '{key}' is not a flag of '{sub_name}'", at())))?;
        let flag = format!("--{key}");
        let given = rest.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}=")));
        if given {
            continue;
        }
        if arg.get_action().takes_values() {
            rest.push(flag);
            rest.push(value.to_string());
        } else {
            match value {
                "true" | "yes" | "1" | "on" => rest.push(flag),
                "false" | "no" | "0" | "off" => {}
                _ => return Err(Failure::usage(format!("{}: '{key}' expects true or false", at()))),
            }
        }
    }
    Ok(rest)
}
