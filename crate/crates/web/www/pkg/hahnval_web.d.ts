/* tslint:disable */
/* eslint-disable */

/**
 * Names of the bundled types.
 */
export function curated_names(): string;

/**
 * Relative degree on a bundled type together with the per-approximant table
 * of `v(x − c_n)`, `v(f(x) − f(c_n))` and the predicted `β + h·v(x − c_n)`.
 */
export function degree_table(curated: string, p: number, poly: string): string;

/**
 * Runs any request understood by the command line, e.g.
 * `{"op": "eval", "p": 3, "poly": "X^2 + X", "x": "1 + t^(1/2)"}`.
 */
export function run_request(request: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly curated_names: () => [number, number];
    readonly degree_table: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly run_request: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
