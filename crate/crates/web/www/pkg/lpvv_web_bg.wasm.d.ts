/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_shellimages_free: (a: number, b: number) => void;
export const envelope_curve: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
export const partition_curves: (a: number, b: number, c: number) => [number, number];
export const shell_images: (a: number, b: number, c: number, d: number) => [number, number, number];
export const shellimages_count: (a: number) => number;
export const shellimages_image: (a: number, b: number) => [number, number];
export const shellimages_norm: (a: number, b: number) => number;
export const shellimages_shell: (a: number, b: number) => number;
export const shellimages_size: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
