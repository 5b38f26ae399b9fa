import { describe, expect, it } from 'vitest'

import type { PartInfo } from '../src/api'
import { PartPicker, PixelReader } from '../src/picking'

// 4x4 lookup image: left half body red, top-right sleeve green,
// bottom-right transparent background
const reader: PixelReader = {
  width: 4,
  height: 4,
  pixelAt(x, y) {
    if (x < 2) return [255, 0, 0, 255]
    if (y < 2) return [0, 255, 0, 255]
    return [0, 0, 0, 0]
  },
}

const parts: PartInfo[] = [
  { name: 'body', color: '#FF0000', pixel_count: 8 },
  { name: 'sleeve', color: '#00FF00', pixel_count: 4 },
]

describe('PartPicker', () => {
  const picker = new PartPicker(reader, parts)

  it('maps labeled pixels to their parts', () => {
    expect(picker.partAt(0, 0)).toBe('body')
    expect(picker.partAt(1.9, 3.2)).toBe('body') // fractional coords floor
    expect(picker.partAt(3, 0)).toBe('sleeve')
  })

  it('returns null on background and out-of-bounds clicks', () => {
    expect(picker.partAt(3, 3)).toBeNull()
    expect(picker.partAt(-1, 0)).toBeNull()
    expect(picker.partAt(0, 99)).toBeNull()
  })

  it('returns null for colors no part claims', () => {
    const odd: PixelReader = {
      width: 1,
      height: 1,
      pixelAt: () => [12, 34, 56, 255],
    }
    expect(new PartPicker(odd, parts).partAt(0, 0)).toBeNull()
  })
})
