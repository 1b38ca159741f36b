/**
 * In-process bindings for the vnnlib2 toolchain.
 *
 * Nothing is reimplemented here: every call shells out to the `vnnlib2`
 * CLI with `--json` and returns its report as a native structure, so the
 * bindings can never drift from the reference semantics.  Query texts and
 * assignment objects are written to temp files for the duration of one
 * call.
 */

import { spawnSync } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import type {
  AssignmentDoc,
  CheckOkReport,
  ErrorReport,
  EvalReport,
  Outcome,
  ParseOkReport,
  Report,
  SearchFoundReport,
  SearchUnknownReport,
} from "./types.js";

export * from "./types.js";

export interface SessionOptions {
  /** Use the exact real-valued theory instead of the float graph theory. */
  real?: boolean;
  /** Command that runs the CLI; defaults to $VNNLIB2_CLI or ["vnnlib2"]. */
  cli?: string[];
}

export interface SearchOptions {
  samples?: number;
  seed?: number;
}

function defaultCli(): string[] {
  const fromEnv = process.env.VNNLIB2_CLI;
  return fromEnv ? fromEnv.split(" ").filter(Boolean) : ["vnnlib2"];
}

function invokeCli(command: string[], args: string[]): Outcome {
  const [program, ...prefix] = command;
  const proc = spawnSync(program, [...prefix, ...args, "--json"], {
    encoding: "utf8",
    maxBuffer: 64 * 1024 * 1024,
  });
  if (proc.error) {
    throw new Error(`failed to run ${program}: ${proc.error.message}`);
  }
  let report: Report;
  try {
    report = JSON.parse(proc.stdout) as Report;
  } catch {
    throw new Error(
      `CLI produced no JSON report (exit ${proc.status}): ${proc.stderr}`,
    );
  }
  if (typeof report !== "object" || report === null || !("status" in report)) {
    throw new Error("CLI report is missing a status field");
  }
  return { exitCode: proc.status ?? 0, report };
}

function withTempDir<T>(fn: (dir: string) => T): T {
  const dir = mkdtempSync(join(tmpdir(), "vnnlib2-"));
  try {
    return fn(dir);
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}

function networkArgs(models: Record<string, string>): string[] {
  return Object.entries(models).flatMap(([name, path]) => [
    "--network",
    `${name}=${path}`,
  ]);
}

/**
 * A fixed-theory session holding immutable model bindings.
 *
 * The theory (float or real) is chosen at construction and cannot change;
 * a model name can be bound once.  Two sessions are fully independent.
 */
export class Session {
  private readonly models = new Map<string, string>();
  private readonly cli: string[];
  readonly real: boolean;

  constructor(options: SessionOptions = {}) {
    this.real = options.real ?? false;
    this.cli = options.cli ?? defaultCli();
  }

  /** Bind a declared network name to a model file path. */
  bindModel(name: string, path: string): this {
    if (this.models.has(name)) {
      throw new Error(`model ${JSON.stringify(name)} is already bound`);
    }
    this.models.set(name, path);
    return this;
  }

  private run(args: string[]): Outcome {
    if (this.real) args = [...args, "--real"];
    return invokeCli(this.cli, args);
  }

  private withQuery(queryText: string, fn: (queryPath: string, dir: string) => Outcome): Outcome {
    return withTempDir((dir) => {
      const queryPath = join(dir, "query.vnnlib");
      writeFileSync(queryPath, queryText, "utf8");
      return fn(queryPath, dir);
    });
  }

  /** Parse a query text; the report carries the AST or a structured error. */
  parse(queryText: string): Outcome<ParseOkReport | ErrorReport> {
    return this.withQuery(queryText, (queryPath) =>
      invokeCli(this.cli, ["parse", queryPath, "--ast-json"]),
    ) as Outcome<ParseOkReport | ErrorReport>;
  }

  /** Type-check a query and, if models are bound, their compatibility. */
  check(queryText: string): Outcome<CheckOkReport | ErrorReport> {
    return this.withQuery(queryText, (queryPath) =>
      this.run([
        "check",
        queryPath,
        ...networkArgs(Object.fromEntries(this.models)),
      ]),
    ) as Outcome<CheckOkReport | ErrorReport>;
  }

  /** Evaluate a query against one input assignment (witness check). */
  eval(
    queryText: string,
    assignment: AssignmentDoc,
  ): Outcome<EvalReport | ErrorReport> {
    return this.withQuery(queryText, (queryPath, dir) => {
      const assignmentPath = join(dir, "assignment.json");
      writeFileSync(assignmentPath, JSON.stringify(assignment), "utf8");
      return this.run([
        "eval",
        queryPath,
        ...networkArgs(Object.fromEntries(this.models)),
        "--assignment",
        assignmentPath,
      ]);
    }) as Outcome<EvalReport | ErrorReport>;
  }

  /** Best-effort witness search; "unknown" is not an unsatisfiability proof. */
  search(
    queryText: string,
    options: SearchOptions = {},
  ): Outcome<SearchFoundReport | SearchUnknownReport | ErrorReport> {
    return this.withQuery(queryText, (queryPath) =>
      this.run([
        "search",
        queryPath,
        ...networkArgs(Object.fromEntries(this.models)),
        ...(options.samples !== undefined
          ? ["--samples", String(options.samples)]
          : []),
        ...(options.seed !== undefined ? ["--seed", String(options.seed)] : []),
      ]),
    ) as Outcome<SearchFoundReport | SearchUnknownReport | ErrorReport>;
  }
}

// -- one-shot helpers over file paths (no session state) ----------------------

export interface InvokeOptions {
  real?: boolean;
  cli?: string[];
}

function oneShot(
  args: string[],
  options: InvokeOptions,
): Outcome {
  const full = options.real ? [...args, "--real"] : args;
  return invokeCli(options.cli ?? defaultCli(), full);
}

/** `vnnlib2 parse FILE --ast-json --json` */
export function parseFile(
  queryPath: string,
  options: InvokeOptions = {},
): Outcome<ParseOkReport | ErrorReport> {
  return oneShot(["parse", queryPath, "--ast-json"], {
    ...options,
    real: false,
  }) as Outcome<ParseOkReport | ErrorReport>;
}

/** `vnnlib2 check FILE [--network ...] --json` */
export function checkFile(
  queryPath: string,
  models: Record<string, string> = {},
  options: InvokeOptions = {},
): Outcome<CheckOkReport | ErrorReport> {
  return oneShot(
    ["check", queryPath, ...networkArgs(models)],
    options,
  ) as Outcome<CheckOkReport | ErrorReport>;
}

/** `vnnlib2 eval FILE --network ... --assignment FILE --json` */
export function evalFile(
  queryPath: string,
  models: Record<string, string>,
  assignmentPath: string,
  options: InvokeOptions = {},
): Outcome<EvalReport | ErrorReport> {
  return oneShot(
    ["eval", queryPath, ...networkArgs(models), "--assignment", assignmentPath],
    options,
  ) as Outcome<EvalReport | ErrorReport>;
}

/** `vnnlib2 search FILE --network ... --json` */
export function searchFile(
  queryPath: string,
  models: Record<string, string>,
  searchOptions: SearchOptions = {},
  options: InvokeOptions = {},
): Outcome<SearchFoundReport | SearchUnknownReport | ErrorReport> {
  return oneShot(
    [
      "search",
      queryPath,
      ...networkArgs(models),
      ...(searchOptions.samples !== undefined
        ? ["--samples", String(searchOptions.samples)]
        : []),
      ...(searchOptions.seed !== undefined
        ? ["--seed", String(searchOptions.seed)]
        : []),
    ],
    options,
  ) as Outcome<SearchFoundReport | SearchUnknownReport | ErrorReport>;
}

/**
 * Canonical JSON: keys sorted, no whitespace — byte-identical to Python's
 * `json.dumps(obj, sort_keys=True, separators=(",", ":"))` for the ASCII
 * report vocabulary, which is what the parity tests compare.
 */
export function canonicalJson(value: unknown): string {
  if (Array.isArray(value)) {
    return "[" + value.map(canonicalJson).join(",") + "]";
  }
  if (value !== null && typeof value === "object") {
    const entries = Object.keys(value as Record<string, unknown>)
      .sort()
      .map(
        (key) =>
          JSON.stringify(key) +
          ":" +
          canonicalJson((value as Record<string, unknown>)[key]),
      );
    return "{" + entries.join(",") + "}";
  }
  return JSON.stringify(value);
}
