import './style.css'
import { ApiClient } from './api'
import { createEditor } from './ui'

const root = document.getElementById('app')
if (!root) throw new Error('missing #app mount point')

createEditor(root, new ApiClient(''))
