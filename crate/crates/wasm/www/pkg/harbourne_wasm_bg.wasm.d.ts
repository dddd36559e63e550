/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const bq_heatmap: (a: number, b: number, c: number, d: number, e: number) => [number, number];
export const generic_series: (a: number, b: number, c: number, d: number, e: number) => [number, number];
export const pullback_series: (a: number, b: number, c: number) => [number, number];
export const __wbindgen_export_0: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
