/* tslint:disable */
/* eslint-disable */

/**
 * A random vorticity field and its dyadic blocks.
 */
export class ShellImages {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Number of images: the field itself, then one per shell.
     */
    count(): number;
    /**
     * Grid samples of image `i`, row-major with rows along `y`.
     */
    image(i: number): Float64Array;
    /**
     * `‖·‖_∞` of image `i`.
     */
    norm(i: number): number;
    /**
     * Shell index of image `i ≥ 1`.
     */
    shell(i: number): number;
    size(): number;
}

/**
 * The Osgood envelope at `points` equally spaced times on `[0, t_final]`.
 */
export function envelope_curve(c: number, c1: number, t_final: number, n: number, alpha: number, points: number): Float64Array;

/**
 * Values of `χ` and of `φ_j` for `j = 0..shells` at `samples` radii in `[0, r_max]`,
 * laid out as `[r..., χ..., φ_0..., φ_1..., …]`.
 */
export function partition_curves(samples: number, r_max: number, shells: number): Float64Array;

/**
 * Decompose a seeded rough vorticity field on an `n × n` grid into homogeneous dyadic blocks.
 */
export function shell_images(n: number, seed: number, slope: number, cutoff: number): ShellImages;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_shellimages_free: (a: number, b: number) => void;
    readonly envelope_curve: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly partition_curves: (a: number, b: number, c: number) => [number, number];
    readonly shell_images: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly shellimages_count: (a: number) => number;
    readonly shellimages_image: (a: number, b: number) => [number, number];
    readonly shellimages_norm: (a: number, b: number) => number;
    readonly shellimages_shell: (a: number, b: number) => number;
    readonly shellimages_size: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
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
