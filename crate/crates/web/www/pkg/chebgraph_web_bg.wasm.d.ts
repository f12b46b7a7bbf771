/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const layout: (a: bigint, b: bigint) => [number, number, number, number];
export const orbit: (a: bigint, b: bigint, c: bigint) => [number, number, number, number];
export const params: (a: bigint, b: bigint) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
