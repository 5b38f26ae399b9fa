// Recipe types mirroring the server's schema-version-1 contract, plus
// checked builders so the editor can only assemble valid ops.

export type Style = 'cartoon' | 'aesthetic' | 'scenic' | 'none'

export interface GeneratedRef {
  generated: {
    prompt: string
    style: Style
    width: number
    height: number
    seed: number
  }
}

export interface InlineRef {
  inline: { digest: string; png_b64: string }
}

export interface AssetRef {
  asset: string
}

export type ImageRef = GeneratedRef | InlineRef | AssetRef

export interface RecolorOp {
  type: 'recolor'
  part: string
  target: string
  preserve_shading: boolean
}

export interface TextureFillOp {
  type: 'texture_fill'
  part: string
  fit: 'tile' | 'stretch'
  tile_scale: number
  blend_opacity: number
  image: ImageRef
}

export interface LogoStampOp {
  type: 'logo_stamp'
  part: string
  anchor_uv: [number, number]
  scale: number
  rotation_deg: number
  opacity: number
  image: ImageRef
}

export type EditOp = RecolorOp | TextureFillOp | LogoStampOp

export interface Recipe {
  schema_version: 1
  garment_id: string
  created_at: string
  ops: EditOp[]
}

export class InvalidOpValue extends Error {}

const HEX_COLOR = /^#[0-9a-fA-F]{6}$/

function checkFraction(value: number, field: string): number {
  if (!Number.isFinite(value) || value < 0 || value > 1) {
    throw new InvalidOpValue(`${field} must be within [0, 1], got ${value}`)
  }
  return value
}

function checkPositive(value: number, field: string): number {
  if (!Number.isFinite(value) || value <= 0) {
    throw new InvalidOpValue(`${field} must be > 0, got ${value}`)
  }
  return value
}

function checkPart(part: string): string {
  if (!part) throw new InvalidOpValue('no part selected')
  return part
}

export function makeRecolor(
  part: string,
  target: string,
  preserveShading: boolean,
): RecolorOp {
  if (!HEX_COLOR.test(target)) {
    throw new InvalidOpValue(`target must look like #RRGGBB, got ${target}`)
  }
  return {
    type: 'recolor',
    part: checkPart(part),
    target: target.toUpperCase(),
    preserve_shading: preserveShading,
  }
}

export function makeTextureFill(
  part: string,
  image: ImageRef,
  fit: 'tile' | 'stretch',
  tileScale = 1.0,
  blendOpacity = 1.0,
): TextureFillOp {
  return {
    type: 'texture_fill',
    part: checkPart(part),
    fit,
    tile_scale: checkPositive(tileScale, 'tile_scale'),
    blend_opacity: checkFraction(blendOpacity, 'blend_opacity'),
    image,
  }
}

export function makeLogoStamp(
  part: string,
  image: ImageRef,
  anchorU: number,
  anchorV: number,
  scale: number,
  rotationDeg: number,
  opacity: number,
): LogoStampOp {
  if (!Number.isFinite(rotationDeg)) {
    throw new InvalidOpValue('rotation_deg must be a finite number')
  }
  return {
    type: 'logo_stamp',
    part: checkPart(part),
    anchor_uv: [
      checkFraction(anchorU, 'anchor u'),
      checkFraction(anchorV, 'anchor v'),
    ],
    scale: checkPositive(scale, 'scale'),
    rotation_deg: rotationDeg,
    opacity: checkFraction(opacity, 'opacity'),
    image,
  }
}

export function makeGeneratedRef(
  prompt: string,
  style: Style,
  width: number,
  height: number,
  seed: number,
): GeneratedRef {
  const trimmed = prompt.trim()
  if (!trimmed || prompt.length > 500) {
    throw new InvalidOpValue('prompt must be 1..500 chars')
  }
  for (const [name, v] of [
    ['width', width],
    ['height', height],
  ] as const) {
    if (!Number.isInteger(v) || v < 64 || v > 2048 || v % 8 !== 0) {
      throw new InvalidOpValue(`${name} must be 64..2048 and a multiple of 8`)
    }
  }
  if (!Number.isInteger(seed) || seed < 0) {
    throw new InvalidOpValue('seed must be a non-negative integer')
  }
  return { generated: { prompt, style, width, height, seed } }
}

export function newRecipe(garmentId: string, ops: EditOp[] = []): Recipe {
  return {
    schema_version: 1,
    garment_id: garmentId,
    created_at: new Date().toISOString(),
    ops,
  }
}

// Stable serialization used to detect "nothing actually changed" so two
// identical consecutive previews cost one fetch.
export function recipeFingerprint(recipe: Recipe): string {
  return JSON.stringify([recipe.garment_id, recipe.ops])
}
