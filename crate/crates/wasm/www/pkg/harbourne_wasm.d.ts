/* tslint:disable */
/* eslint-disable */
/**
 * Harbourne constant of the pull-back to `X_e` for `e = 4..=e_max`, next to
 * the `C0`-disjoint bound, the general bound and the global bound.
 */
export function pullback_series(name: string, e_max: number): string;
/**
 * Generic arrangements of class `(a, b)` on `X_e` over a genus-`g` curve,
 * `d = 4..=d_max`: Harbourne constant against the general bound.
 */
export function generic_series(g: number, e: number, a: number, b: number, d_max: number): string;
/**
 * Ball-quotient verdicts on the `(a, d)` plane for fixed `g`, `e` and
 * `b = ae + b_offset`.
 */
export function bq_heatmap(g: number, e: number, b_offset: number, a_max: number, d_max: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
  readonly memory: WebAssembly.Memory;
  readonly bq_heatmap: (a: number, b: number, c: number, d: number, e: number) => [number, number];
  readonly generic_series: (a: number, b: number, c: number, d: number, e: number) => [number, number];
  readonly pullback_series: (a: number, b: number, c: number) => [number, number];
  readonly __wbindgen_export_0: WebAssembly.Table;
  readonly __wbindgen_malloc: (a: number, b: number) => number;
  readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
