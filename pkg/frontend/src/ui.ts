// DOM composition for the editor: garment picker, clickable atlas view
// with part highlighting, the three op forms, the working recipe list,
// and the wardrobe panel. All server traffic goes through ApiClient;
// all state changes go through EditorState.

import { ApiClient, ApiError, PngResponse } from './api'
import { PartPicker, PixelReader, canvasPixelReader, parseHexColor } from './picking'
import { PreviewLoop } from './preview'
import {
  EditOp,
  InvalidOpValue,
  Style,
  makeGeneratedRef,
  makeLogoStamp,
  makeRecolor,
  makeTextureFill,
} from './recipeModel'
import { EditorState } from './state'

export interface EditorOptions {
  // test hook: build a PixelReader without canvas APIs
  readerFactory?: (blob: Blob) => Promise<PixelReader>
}

export interface Editor {
  state: EditorState
  previewLoop: PreviewLoop
  picker: PartPicker | null
  lastPreview: PngResponse | null
  ready: Promise<void>
  root: HTMLElement
  selectGarment(garmentId: string): Promise<void>
  clickAtlas(x: number, y: number): void
  refreshPreview(): Promise<void>
  refreshWardrobe(): Promise<void>
  openOutfit(outfitId: string): Promise<void>
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag)
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value)
  if (text !== undefined) node.textContent = text
  return node
}

function labeled(labelText: string, input: HTMLElement): HTMLLabelElement {
  const label = el('label')
  label.append(labelText, input)
  return label
}

export function createEditor(
  root: HTMLElement,
  api: ApiClient,
  options: EditorOptions = {},
): Editor {
  const state = new EditorState()
  const previewLoop = new PreviewLoop(api)
  const makeReader = options.readerFactory ?? canvasPixelReader

  // ------------------------------------------------------------- skeleton

  const garmentSelect = el('select', { id: 'garment-select' })
  const statusLine = el('p', { id: 'status', role: 'status' })

  const previewImg = el('img', { id: 'preview-image', alt: 'atlas preview' })
  const highlightCanvas = el('canvas', { id: 'part-highlight' })
  const atlasView = el('div', { id: 'atlas-view' })
  atlasView.append(previewImg, highlightCanvas)

  const partList = el('ul', { id: 'part-list', 'aria-label': 'parts' })
  const selectedPartLine = el('p', { id: 'selected-part' }, 'no part selected')

  // recolor form
  const recolorColor = el('input', { id: 'recolor-color', value: '#3A7BFF' }) as HTMLInputElement
  const recolorShading = el('input', { id: 'recolor-shading', type: 'checkbox', checked: '' }) as HTMLInputElement
  const recolorForm = el('form', { id: 'recolor-form' })
  recolorForm.append(
    el('h3', {}, 'Recolor'),
    labeled('color ', recolorColor),
    labeled(' keep shading ', recolorShading),
    el('button', { type: 'submit' }, 'add recolor'),
  )

  // texture fill form
  const fillPrompt = el('input', { id: 'fill-prompt', value: '' }) as HTMLInputElement
  const fillStyle = el('select', { id: 'fill-style' }) as HTMLSelectElement
  for (const style of ['cartoon', 'aesthetic', 'scenic', 'none']) {
    fillStyle.append(el('option', { value: style }, style))
  }
  const fillSeed = el('input', { id: 'fill-seed', type: 'number', value: '0' }) as HTMLInputElement
  const fillSize = el('input', { id: 'fill-size', value: '256' }) as HTMLInputElement
  const fillFit = el('select', { id: 'fill-fit' }) as HTMLSelectElement
  fillFit.append(el('option', { value: 'tile' }, 'tile'), el('option', { value: 'stretch' }, 'stretch'))
  const fillTileScale = el('input', { id: 'fill-tile-scale', value: '1.0' }) as HTMLInputElement
  const fillOpacity = el('input', { id: 'fill-opacity', value: '1.0' }) as HTMLInputElement
  const fillForm = el('form', { id: 'fill-form' })
  fillForm.append(
    el('h3', {}, 'Texture fill'),
    labeled('prompt ', fillPrompt),
    labeled(' style ', fillStyle),
    labeled(' seed ', fillSeed),
    labeled(' size ', fillSize),
    labeled(' fit ', fillFit),
    labeled(' tile scale ', fillTileScale),
    labeled(' opacity ', fillOpacity),
    el('button', { type: 'submit' }, 'generate + fill'),
  )

  // logo form
  const logoPrompt = el('input', { id: 'logo-prompt', value: '' }) as HTMLInputElement
  const logoFile = el('input', { id: 'logo-file', type: 'file', accept: 'image/png' }) as HTMLInputElement
  const logoU = el('input', { id: 'logo-u', value: '0.5' }) as HTMLInputElement
  const logoV = el('input', { id: 'logo-v', value: '0.35' }) as HTMLInputElement
  const logoScale = el('input', { id: 'logo-scale', value: '0.8' }) as HTMLInputElement
  const logoRotation = el('input', { id: 'logo-rotation', value: '0' }) as HTMLInputElement
  const logoOpacity = el('input', { id: 'logo-opacity', value: '1.0' }) as HTMLInputElement
  const logoForm = el('form', { id: 'logo-form' })
  logoForm.append(
    el('h3', {}, 'Logo stamp'),
    labeled('prompt ', logoPrompt),
    labeled(' or PNG ', logoFile),
    labeled(' u ', logoU),
    labeled(' v ', logoV),
    labeled(' scale ', logoScale),
    labeled(' rotation ', logoRotation),
    labeled(' opacity ', logoOpacity),
    el('button', { type: 'submit' }, 'add logo'),
  )

  const opList = el('ol', { id: 'op-list' })
  const clearOpsButton = el('button', { id: 'clear-ops', type: 'button' }, 'clear all')

  const outfitTitle = el('input', { id: 'outfit-title', value: '' }) as HTMLInputElement
  const saveButton = el('button', { id: 'save-outfit', type: 'button' }, 'save to wardrobe')
  const outfitList = el('ul', { id: 'outfit-list' })

  root.append(
    el('h1', {}, 'uvforge editor'),
    labeled('garment ', garmentSelect),
    statusLine,
    atlasView,
    el('h2', {}, 'Parts'),
    selectedPartLine,
    partList,
    el('h2', {}, 'Edits'),
    recolorForm,
    fillForm,
    logoForm,
    el('h2', {}, 'Recipe'),
    opList,
    clearOpsButton,
    el('h2', {}, 'Wardrobe'),
    labeled('title ', outfitTitle),
    saveButton,
    outfitList,
  )

  // ------------------------------------------------------------- behavior

  let picker: PartPicker | null = null
  let lookupReader: PixelReader | null = null
  let lastPreviewUrl: string | null = null

  const editor: Editor = {
    state,
    previewLoop,
    get picker() {
      return picker
    },
    lastPreview: null,
    ready: Promise.resolve(),
    root,
    selectGarment,
    clickAtlas,
    refreshPreview,
    refreshWardrobe,
    openOutfit,
  }

  function setStatus(text: string, isError = false) {
    statusLine.textContent = text
    statusLine.className = isError ? 'error' : ''
  }

  function reportError(err: unknown) {
    if (err instanceof DOMException && err.name === 'AbortError') return
    if (err instanceof ApiError) {
      setStatus(`${err.code}: ${err.message}`, true)
    } else if (err instanceof InvalidOpValue) {
      setStatus(`invalid value: ${err.message}`, true)
    } else {
      setStatus(String(err), true)
    }
  }

  async function refreshPreview(): Promise<void> {
    const snap = state.snapshot()
    if (!snap.garment) return
    try {
      const result = await previewLoop.render(snap.garment.garment_id, state.currentRecipe())
      editor.lastPreview = { blob: result.blob, etag: result.etag }
      if (result.fetched && typeof URL.createObjectURL === 'function') {
        if (lastPreviewUrl) URL.revokeObjectURL(lastPreviewUrl)
        lastPreviewUrl = URL.createObjectURL(result.blob)
        previewImg.src = lastPreviewUrl
      }
      setStatus(`preview ok (${snap.ops.length} ops)`)
    } catch (err) {
      reportError(err)
    }
  }

  function drawHighlight(partName: string | null) {
    if (!lookupReader || typeof highlightCanvas.getContext !== 'function') return
    const ctx = highlightCanvas.getContext('2d')
    if (!ctx) return
    highlightCanvas.width = lookupReader.width
    highlightCanvas.height = lookupReader.height
    ctx.clearRect(0, 0, highlightCanvas.width, highlightCanvas.height)
    if (!partName) return
    const snap = state.snapshot()
    const part = snap.parts.find((p) => p.name === partName)
    if (!part) return
    const [r, g, b] = parseHexColor(part.color)
    const image = ctx.createImageData(lookupReader.width, lookupReader.height)
    for (let y = 0; y < lookupReader.height; y++) {
      for (let x = 0; x < lookupReader.width; x++) {
        const [pr, pg, pb, pa] = lookupReader.pixelAt(x, y)
        if (pa > 0 && pr === r && pg === g && pb === b) {
          const i = (y * lookupReader.width + x) * 4
          image.data[i] = 255
          image.data[i + 1] = 255
          image.data[i + 2] = 255
          image.data[i + 3] = 110
        }
      }
    }
    ctx.putImageData(image, 0, 0)
  }

  function renderParts() {
    const snap = state.snapshot()
    partList.textContent = ''
    for (const part of snap.parts) {
      const button = el('button', { type: 'button', 'data-part': part.name }, part.name)
      if (part.name === snap.selectedPart) button.classList.add('selected')
      button.addEventListener('click', () => {
        state.selectPart(part.name)
      })
      const item = el('li')
      const swatch = el('span', { class: 'swatch' })
      swatch.style.backgroundColor = part.color
      item.append(swatch, button)
      partList.append(item)
    }
    selectedPartLine.textContent = snap.selectedPart
      ? `selected part: ${snap.selectedPart}`
      : 'no part selected'
  }

  function describeOp(op: EditOp): string {
    switch (op.type) {
      case 'recolor':
        return `recolor ${op.part} -> ${op.target}${op.preserve_shading ? ' (keep shading)' : ''}`
      case 'texture_fill':
        return `fill ${op.part} (${op.fit})`
      case 'logo_stamp':
        return `logo on ${op.part} @ (${op.anchor_uv[0]}, ${op.anchor_uv[1]})`
    }
  }

  function renderOps() {
    const snap = state.snapshot()
    opList.textContent = ''
    snap.ops.forEach((op, index) => {
      const item = el('li', { 'data-op-type': op.type })
      item.append(el('span', {}, describeOp(op)))
      const up = el('button', { type: 'button', 'data-action': 'up' }, '↑')
      up.addEventListener('click', () => {
        state.moveOp(index, -1)
        void refreshPreview()
      })
      const down = el('button', { type: 'button', 'data-action': 'down' }, '↓')
      down.addEventListener('click', () => {
        state.moveOp(index, 1)
        void refreshPreview()
      })
      const remove = el('button', { type: 'button', 'data-action': 'remove' }, '×')
      remove.addEventListener('click', () => {
        state.removeOp(index)
        void refreshPreview()
      })
      item.append(up, down, remove)
      opList.append(item)
    })
  }

  function renderOutfits() {
    const snap = state.snapshot()
    outfitList.textContent = ''
    for (const outfit of snap.outfits) {
      const item = el('li', { 'data-outfit-id': outfit.outfit_id })
      item.append(el('span', {}, `${outfit.title} (${outfit.garment_id})`))
      const open = el('button', { type: 'button', 'data-action': 'open' }, 'open')
      open.addEventListener('click', () => {
        void openOutfit(outfit.outfit_id)
      })
      const remove = el('button', { type: 'button', 'data-action': 'delete' }, 'delete')
      remove.addEventListener('click', () => {
        void (async () => {
          try {
            await api.deleteOutfit(outfit.outfit_id)
            await refreshWardrobe() // card disappears only after the 204
          } catch (err) {
            reportError(err)
          }
        })()
      })
      item.append(open, remove)
      outfitList.append(item)
    }
  }

  state.subscribe(() => {
    renderParts()
    renderOps()
    renderOutfits()
    drawHighlight(state.snapshot().selectedPart)
  })

  // ------------------------------------------------------ user interactions

  function clickAtlas(x: number, y: number) {
    if (!picker) return
    const part = picker.partAt(x, y)
    // background clicks leave the selection unchanged
    if (part !== null) state.selectPart(part)
  }

  previewImg.addEventListener('click', (event: MouseEvent) => {
    const rect = previewImg.getBoundingClientRect()
    const snap = state.snapshot()
    if (!snap.garment || rect.width === 0 || rect.height === 0) return
    const x = ((event.clientX - rect.left) / rect.width) * snap.garment.width
    const y = ((event.clientY - rect.top) / rect.height) * snap.garment.height
    clickAtlas(x, y)
  })

  recolorForm.addEventListener('submit', (event) => {
    event.preventDefault()
    const snap = state.snapshot()
    try {
      const op = makeRecolor(snap.selectedPart ?? '', recolorColor.value, recolorShading.checked)
      state.appendOp(op)
      void refreshPreview()
    } catch (err) {
      reportError(err)
    }
  })

  fillForm.addEventListener('submit', (event) => {
    event.preventDefault()
    void (async () => {
      const snap = state.snapshot()
      try {
        const size = parseInt(fillSize.value, 10)
        const ref = makeGeneratedRef(
          fillPrompt.value,
          fillStyle.value as Style,
          size,
          size,
          parseInt(fillSeed.value, 10),
        )
        const op = makeTextureFill(
          snap.selectedPart ?? '',
          ref,
          fillFit.value as 'tile' | 'stretch',
          parseFloat(fillTileScale.value),
          parseFloat(fillOpacity.value),
        )
        // flow contract: generate first (warms the server cache, surfaces
        // provider errors early), then preview with the op appended
        await api.generate(ref.generated)
        state.appendOp(op)
        await refreshPreview()
      } catch (err) {
        reportError(err)
      }
    })()
  })

  async function inlineRefFromFile(file: File) {
    const bytes = new Uint8Array(await file.arrayBuffer())
    const digestBuf = await crypto.subtle.digest('SHA-256', bytes)
    const digest = [...new Uint8Array(digestBuf)]
      .map((b) => b.toString(16).padStart(2, '0'))
      .join('')
    let binary = ''
    for (const b of bytes) binary += String.fromCharCode(b)
    return { inline: { digest, png_b64: btoa(binary) } }
  }

  logoForm.addEventListener('submit', (event) => {
    event.preventDefault()
    void (async () => {
      const snap = state.snapshot()
      try {
        let ref
        const file = logoFile.files?.[0]
        if (file) {
          ref = await inlineRefFromFile(file)
        } else {
          ref = makeGeneratedRef(logoPrompt.value, 'none', 256, 256, 0)
          await api.generate(ref.generated)
        }
        const op = makeLogoStamp(
          snap.selectedPart ?? '',
          ref,
          parseFloat(logoU.value),
          parseFloat(logoV.value),
          parseFloat(logoScale.value),
          parseFloat(logoRotation.value),
          parseFloat(logoOpacity.value),
        )
        state.appendOp(op)
        await refreshPreview()
      } catch (err) {
        reportError(err)
      }
    })()
  })

  clearOpsButton.addEventListener('click', () => {
    state.clearOps() // removing all ops restores the base atlas view
    void refreshPreview()
  })

  saveButton.addEventListener('click', () => {
    void (async () => {
      try {
        const title = outfitTitle.value.trim() || 'untitled look'
        await api.saveOutfit(state.currentRecipe(), title)
        await refreshWardrobe()
        setStatus(`saved "${title}"`)
      } catch (err) {
        reportError(err)
      }
    })()
  })

  // --------------------------------------------------------------- loading

  async function refreshWardrobe(): Promise<void> {
    state.setOutfits(await api.listOutfits())
  }

  async function openOutfit(outfitId: string): Promise<void> {
    try {
      const outfit = await api.loadOutfit(outfitId)
      if (outfit.garment_id !== state.snapshot().garment?.garment_id) {
        await selectGarment(outfit.garment_id)
      }
      state.loadRecipe(outfit.recipe.ops, outfit.outfit_id)
      await refreshPreview()
    } catch (err) {
      reportError(err)
    }
  }

  async function selectGarment(garmentId: string): Promise<void> {
    const garments = await api.listGarments()
    const garment = garments.find((g) => g.garment_id === garmentId)
    if (!garment) throw new Error(`garment ${garmentId} is not installed`)
    const parts = await api.listParts(garmentId)
    previewLoop.reset()
    state.setGarment(garment, parts)
    garmentSelect.value = garmentId

    const lookup = await api.fetchPartLookup(garmentId)
    lookupReader = await makeReader(lookup.blob)
    picker = new PartPicker(lookupReader, parts)
    await refreshPreview()
    await refreshWardrobe()
  }

  garmentSelect.addEventListener('change', () => {
    void selectGarment(garmentSelect.value).catch(reportError)
  })

  editor.ready = (async () => {
    const garments = await api.listGarments()
    garmentSelect.textContent = ''
    for (const garment of garments) {
      garmentSelect.append(el('option', { value: garment.garment_id }, garment.name))
    }
    if (garments.length > 0) {
      await selectGarment(garments[0].garment_id)
    } else {
      setStatus('no garments installed')
    }
  })()

  return editor
}
