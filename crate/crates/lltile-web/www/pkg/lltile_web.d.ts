/* tslint:disable */
/* eslint-disable */

/**
 * Canonical form `(marker; lamps)` of a word over a, A, b, B.
 */
export function evaluate(word: string): string;

/**
 * Walks the sea-level grid simulated on tetrahedron(−3, 3) by the Ω
 * configuration, from the identity. `moves` is a string over E, N, W, S;
 * each line of the result is `<point> (m, n)`, or the reason a step failed.
 */
export function sea_walk(moves: string): string;

/**
 * Solves a builtin tileset on a window with one seed `<word>=<tile>`.
 * Returns `SAT` and one `<point> <tile>` line per vertex, or `UNSAT`.
 */
export function solve_window(tileset: string, spec: string, seed: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly evaluate: (a: number, b: number) => [number, number, number, number];
    readonly sea_walk: (a: number, b: number) => [number, number, number, number];
    readonly solve_window: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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
