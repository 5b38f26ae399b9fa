// Part picking: resolve a clicked atlas pixel against the garment's
// part-lookup image (flat label colors, transparent background), fetched
// once per garment. No per-click server round-trips.

import type { PartInfo } from './api'

export interface PixelReader {
  width: number
  height: number
  // returns [r, g, b, a] at integer pixel coords
  pixelAt(x: number, y: number): [number, number, number, number]
}

export function parseHexColor(hex: string): [number, number, number] {
  const v = parseInt(hex.slice(1), 16)
  return [(v >> 16) & 0xff, (v >> 8) & 0xff, v & 0xff]
}

export class PartPicker {
  private byColor = new Map<string, string>()

  constructor(
    private reader: PixelReader,
    parts: PartInfo[],
  ) {
    for (const part of parts) {
      const [r, g, b] = parseHexColor(part.color)
      this.byColor.set(`${r},${g},${b}`, part.name)
    }
  }

  // null = background / outside: the caller leaves the selection alone
  partAt(x: number, y: number): string | null {
    if (x < 0 || y < 0 || x >= this.reader.width || y >= this.reader.height) {
      return null
    }
    const [r, g, b, a] = this.reader.pixelAt(Math.floor(x), Math.floor(y))
    if (a === 0) return null
    return this.byColor.get(`${r},${g},${b}`) ?? null
  }
}

// Browser-side reader: decode the lookup PNG into an offscreen canvas once.
export async function canvasPixelReader(blob: Blob): Promise<PixelReader> {
  const bitmap = await createImageBitmap(blob)
  const canvas = document.createElement('canvas')
  canvas.width = bitmap.width
  canvas.height = bitmap.height
  const ctx = canvas.getContext('2d', { willReadFrequently: true })
  if (!ctx) throw new Error('2d canvas unavailable')
  ctx.drawImage(bitmap, 0, 0)
  const data = ctx.getImageData(0, 0, bitmap.width, bitmap.height).data
  return {
    width: bitmap.width,
    height: bitmap.height,
    pixelAt(x, y) {
      const i = (y * bitmap.width + x) * 4
      return [data[i], data[i + 1], data[i + 2], data[i + 3]]
    },
  }
}
