// End-to-end editor flow against a live uvforge service:
// install fixture -> click part -> submit the fill form with a fixed seed
// -> preview digest equals the server-side render digest -> save ->
// reopen the outfit -> identical op list and preview digest.
//
// The service is the real Python process over real HTTP; the editor is
// the real DOM app running in happy-dom, with a pngjs-backed pixel reader
// standing in for canvas decoding.

import { createHash } from 'node:crypto'
import { mkdtempSync, rmSync } from 'node:fs'
import { tmpdir } from 'node:os'
import { join, resolve } from 'node:path'
import { spawn, spawnSync, type ChildProcess } from 'node:child_process'

import { PNG } from 'pngjs'
import { afterAll, beforeAll, describe, expect, it } from 'vitest'

import { ApiClient } from '../src/api'
import type { PixelReader } from '../src/picking'
import { createEditor, type Editor } from '../src/ui'

const REPO = resolve(__dirname, '..', '..')
const FIXTURES = join(REPO, 'tests', 'fixtures')
const PORT = 18000 + Math.floor(Math.random() * 10000)
const BASE = `http://127.0.0.1:${PORT}`

let serverProc: ChildProcess
let storeDir: string

async function sha256(blob: Blob): Promise<string> {
  const bytes = Buffer.from(await blob.arrayBuffer())
  return createHash('sha256').update(bytes).digest('hex')
}

async function pngPixelReader(blob: Blob): Promise<PixelReader> {
  const png = PNG.sync.read(Buffer.from(await blob.arrayBuffer()))
  return {
    width: png.width,
    height: png.height,
    pixelAt(x, y) {
      const i = (y * png.width + x) * 4
      return [png.data[i], png.data[i + 1], png.data[i + 2], png.data[i + 3]]
    },
  }
}

async function waitFor(
  predicate: () => boolean,
  what: string,
  timeoutMs = 15000,
): Promise<void> {
  const start = Date.now()
  while (!predicate()) {
    if (Date.now() - start > timeoutMs) throw new Error(`timed out waiting for ${what}`)
    await new Promise((r) => setTimeout(r, 50))
  }
}

beforeAll(async () => {
  storeDir = mkdtempSync(join(tmpdir(), 'uvforge-ui-e2e-'))

  const install = spawnSync(
    'python3',
    [
      '-m', 'uvforge', 'wardrobe', 'install',
      '--store', storeDir,
      '--atlas', join(FIXTURES, 'garment', 'atlas.png'),
      '--mask', join(FIXTURES, 'garment', 'mask.png'),
      '--registry', join(FIXTURES, 'garment', 'registry.json'),
    ],
    { encoding: 'utf-8' },
  )
  expect(install.status, install.stderr).toBe(0)

  serverProc = spawn(
    'python3',
    ['-m', 'uvforge', 'serve', '--store', storeDir,
     '--provider', 'mock', '--host', '127.0.0.1', '--port', String(PORT)],
    { stdio: 'ignore' },
  )

  const deadline = Date.now() + 30000
  for (;;) {
    try {
      const res = await fetch(`${BASE}/v1/garments`)
      if (res.ok) break
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error('service did not come up')
    await new Promise((r) => setTimeout(r, 200))
  }
}, 60000)

afterAll(() => {
  serverProc?.kill()
  if (storeDir) rmSync(storeDir, { recursive: true, force: true })
})

async function bootEditor(): Promise<Editor> {
  document.body.innerHTML = '<div id="app"></div>'
  const editor = createEditor(
    document.getElementById('app') as HTMLElement,
    new ApiClient(BASE),
    { readerFactory: pngPixelReader },
  )
  await editor.ready
  return editor
}

describe('editor end-to-end against the live service', () => {
  it('runs the full demo loop: pick, fill, preview, save, reopen', async () => {
    const editor = await bootEditor()
    expect(editor.state.snapshot().garment?.garment_id).toBe('tee')
    expect(editor.lastPreview).not.toBeNull()
    const basePreviewDigest = await sha256(editor.lastPreview!.blob)

    // --- click a part: (40, 40) sits inside the left sleeve rect
    editor.clickAtlas(40, 40)
    expect(editor.state.snapshot().selectedPart).toBe('sleeve')

    // clicking background afterwards leaves the selection unchanged
    editor.clickAtlas(2, 2)
    expect(editor.state.snapshot().selectedPart).toBe('sleeve')

    // --- submit the fill form with a fixed seed
    const prompt = document.getElementById('fill-prompt') as HTMLInputElement
    const seed = document.getElementById('fill-seed') as HTMLInputElement
    const size = document.getElementById('fill-size') as HTMLInputElement
    prompt.value = 'blue stripes'
    seed.value = '7'
    size.value = '64'
    const fillForm = document.getElementById('fill-form') as HTMLFormElement
    fillForm.dispatchEvent(new Event('submit', { bubbles: true, cancelable: true }))

    await waitFor(() => editor.state.snapshot().ops.length === 1, 'fill op appended')
    await waitFor(
      () => editor.previewLoop.fetchCount >= 2,
      'preview refreshed after the fill',
    )
    await waitFor(() => editor.root.querySelector('#status')?.textContent?.startsWith('preview ok') ?? false,
      'preview settled')

    const snap = editor.state.snapshot()
    expect(snap.ops[0]).toMatchObject({
      type: 'texture_fill',
      part: 'sleeve',
      fit: 'tile',
      image: { generated: { prompt: 'blue stripes', seed: 7, width: 64, height: 64 } },
    })

    const previewDigest = await sha256(editor.lastPreview!.blob)
    expect(previewDigest).not.toBe(basePreviewDigest)

    // --- the server-side render of the same recipe is byte-identical
    const serverRender = await fetch(`${BASE}/v1/garments/tee/preview`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(editor.state.currentRecipe()),
    })
    expect(serverRender.status).toBe(200)
    const serverDigest = createHash('sha256')
      .update(Buffer.from(await serverRender.arrayBuffer()))
      .digest('hex')
    expect(previewDigest).toBe(serverDigest)

    // an identical follow-up preview is served without another fetch
    const fetchesBefore = editor.previewLoop.fetchCount
    await editor.refreshPreview()
    expect(editor.previewLoop.fetchCount).toBe(fetchesBefore)

    // --- save to the wardrobe
    const title = document.getElementById('outfit-title') as HTMLInputElement
    title.value = 'e2e look'
    ;(document.getElementById('save-outfit') as HTMLButtonElement).click()
    await waitFor(() => editor.state.snapshot().outfits.length === 1, 'outfit listed')
    const outfit = editor.state.snapshot().outfits[0]
    expect(outfit.title).toBe('e2e look')
    // stored texture bytes == the preview the user was looking at
    expect(outfit.texture_digest).toBe(previewDigest)

    // --- wipe the working recipe, then reopen the outfit
    ;(document.getElementById('clear-ops') as HTMLButtonElement).click()
    await waitFor(
      () => editor.state.snapshot().ops.length === 0,
      'recipe cleared',
    )
    const openButton = editor.root.querySelector(
      `#outfit-list li[data-outfit-id="${outfit.outfit_id}"] button[data-action="open"]`,
    ) as HTMLButtonElement
    expect(openButton).not.toBeNull()
    openButton.click()
    await waitFor(() => editor.state.snapshot().ops.length === 1, 'recipe reopened')
    await waitFor(() => editor.state.snapshot().openedOutfitId === outfit.outfit_id,
      'outfit marked open')

    // identical op list...
    expect(editor.state.snapshot().ops).toEqual(snap.ops)
    // ...and the re-rendered preview matches the stored texture digest
    await waitFor(
      () => editor.lastPreview !== null,
      'preview after reopen',
    )
    const reopenedDigest = await sha256(editor.lastPreview!.blob)
    expect(reopenedDigest).toBe(outfit.texture_digest)
  }, 60000)

  it('keyboard part list offers the same selection as clicking', async () => {
    const editor = await bootEditor()
    const bodyButton = editor.root.querySelector(
      '#part-list button[data-part="body"]',
    ) as HTMLButtonElement
    bodyButton.click()
    expect(editor.state.snapshot().selectedPart).toBe('body')
    // parity with pixel picking: (128, 200) is deep inside the body rect
    editor.clickAtlas(128, 200)
    expect(editor.state.snapshot().selectedPart).toBe('body')
  })

  it('shows machine-readable error codes from the server', async () => {
    const editor = await bootEditor()
    // recolor with no part selected is blocked client-side
    const recolorForm = document.getElementById('recolor-form') as HTMLFormElement
    recolorForm.dispatchEvent(new Event('submit', { bubbles: true, cancelable: true }))
    await waitFor(
      () => editor.root.querySelector('#status')?.textContent?.includes('invalid value') ?? false,
      'client-side block surfaced',
    )
    expect(editor.state.snapshot().ops).toHaveLength(0)

    // out-of-range opacity is blocked client-side before any request
    editor.clickAtlas(128, 200)
    const opacity = document.getElementById('logo-opacity') as HTMLInputElement
    const logoPrompt = document.getElementById('logo-prompt') as HTMLInputElement
    logoPrompt.value = 'star'
    opacity.value = '1.5'
    const logoForm = document.getElementById('logo-form') as HTMLFormElement
    logoForm.dispatchEvent(new Event('submit', { bubbles: true, cancelable: true }))
    await waitFor(
      () => editor.root.querySelector('#status')?.textContent?.includes('[0, 1]') ?? false,
      'opacity block surfaced',
    )
    expect(editor.state.snapshot().ops).toHaveLength(0)
  })
})
